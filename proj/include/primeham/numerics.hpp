#pragma once

#include "primeham/numerics/quadrature.hpp"
#include "primeham/numerics/riccati.hpp"
#include "primeham/numerics/roots.hpp"
#include "primeham/numerics/special.hpp"
