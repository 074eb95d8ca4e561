#pragma once

#include "specvaran/core.hpp"
#include "specvaran/eig_deriv.hpp"
#include "specvaran/numeric_oracle.hpp"
#include "specvaran/optimality.hpp"
#include "specvaran/spectral_function.hpp"
#include "specvaran/symmat.hpp"
#include "specvaran/symmetric_function.hpp"
