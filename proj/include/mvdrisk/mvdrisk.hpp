#pragma once

#include "mvdrisk/el_curve.hpp"
#include "mvdrisk/error.hpp"
#include "mvdrisk/inversion.hpp"
#include "mvdrisk/mvd_distribution.hpp"
#include "mvdrisk/numeric.hpp"
#include "mvdrisk/quadrature.hpp"
#include "mvdrisk/risk_measures.hpp"
#include "mvdrisk/simulation.hpp"
