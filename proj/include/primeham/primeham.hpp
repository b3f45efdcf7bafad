#pragma once

#include "primeham/counting.hpp"
#include "primeham/dressing.hpp"
#include "primeham/eigensolve.hpp"
#include "primeham/errors.hpp"
#include "primeham/numerics.hpp"
#include "primeham/potential.hpp"
#include "primeham/primes.hpp"
#include "primeham/twin_analysis.hpp"
#include "primeham/wkb_inverse.hpp"
