#pragma once

// Umbrella header: distributions, characteristic functions, stationary
// covariances and Renyi entropies of multivariate ARMA control systems with
// Gaussian, Cauchy or Laplace residuals, plus the seeded Monte Carlo oracle.

#include "armaent/charfn.hpp"
#include "armaent/covariance.hpp"
#include "armaent/entropy.hpp"
#include "armaent/errors.hpp"
#include "armaent/matrix.hpp"
#include "armaent/model.hpp"
#include "armaent/model_json.hpp"
#include "armaent/quadrature.hpp"
#include "armaent/realization.hpp"
#include "armaent/reference_cases.hpp"
#include "armaent/reproduce.hpp"
#include "armaent/simulate.hpp"

namespace armaent {
inline constexpr const char* version = "0.1.0";
}
