#pragma once

// Spectral solvers and a convergence-rate harness for the rescaled dipolar
// Gross-Pitaevskii equation and its strong-confinement, semiclassical and
// dipole-kernel limit models.

#include "dgpe/core/bnorm.hpp"
#include "dgpe/core/errors.hpp"
#include "dgpe/core/fft.hpp"
#include "dgpe/core/grid.hpp"
#include "dgpe/core/hermite.hpp"
#include "dgpe/core/resample.hpp"
#include "dgpe/core/transverse.hpp"
#include "dgpe/core/wavefield.hpp"
#include "dgpe/harness/config_io.hpp"
#include "dgpe/harness/initial_data.hpp"
#include "dgpe/harness/io.hpp"
#include "dgpe/harness/physical.hpp"
#include "dgpe/harness/ratefit.hpp"
#include "dgpe/harness/runner.hpp"
#include "dgpe/harness/selftest.hpp"
#include "dgpe/harness/sweep.hpp"
#include "dgpe/model/gauge.hpp"
#include "dgpe/model/kernel.hpp"
#include "dgpe/model/nonlinearity.hpp"
#include "dgpe/model/params.hpp"
#include "dgpe/model/phase.hpp"
#include "dgpe/oracle/direct_convolution.hpp"
#include "dgpe/oracle/riccati_ode.hpp"
#include "dgpe/solver/averaged.hpp"
#include "dgpe/solver/config.hpp"
#include "dgpe/solver/full.hpp"
#include "dgpe/solver/transport.hpp"
