#pragma once

// Umbrella header for the quantum-reading numerics library.

#include "qread/covariance.hpp"
#include "qread/discrimination.hpp"
#include "qread/errors.hpp"
#include "qread/fock.hpp"
#include "qread/numeric.hpp"
#include "qread/oracle_check.hpp"
#include "qread/readout.hpp"
#include "qread/secure_design.hpp"
#include "qread/sweep.hpp"
