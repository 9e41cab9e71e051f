#pragma once

#include "pisum/numerics/coefficients.hpp"
#include "pisum/numerics/differences.hpp"
#include "pisum/numerics/extrapolation.hpp"
#include "pisum/numerics/quadrature.hpp"
#include "pisum/numerics/summation.hpp"
