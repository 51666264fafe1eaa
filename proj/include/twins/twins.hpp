#pragma once

#include "twins/errors.hpp"
#include "twins/core.hpp"
#include "twins/sequences.hpp"
#include "twins/reductions.hpp"
#include "twins/random.hpp"
#include "twins/parallel.hpp"
#include "twins/builder.hpp"
#include "twins/oracle.hpp"
#include "twins/constructions.hpp"
#include "twins/io.hpp"
#include "twins/harness.hpp"
