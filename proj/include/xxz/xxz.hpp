#pragma once

#include "xxz/correlations.hpp"
#include "xxz/errors.hpp"
#include "xxz/linalg.hpp"
#include "xxz/models.hpp"
#include "xxz/sweep.hpp"
