#pragma once

#include "ramified/errors.hpp"
#include "ramified/rational.hpp"
#include "ramified/residue.hpp"
#include "ramified/padics.hpp"
#include "ramified/ramify.hpp"
#include "ramified/lifting.hpp"
#include "ramified/reduce.hpp"
#include "ramified/identify.hpp"
#include "ramified/classfield.hpp"
#include "ramified/io.hpp"
#include "ramified/enumerate.hpp"
