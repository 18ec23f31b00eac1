#pragma once

// Sigma-method structural analysis of DAE systems: signature matrices,
// highest-value transversals, offset duals, coarse/fine block-triangular
// forms, the essential pattern and the weighted fine-block graph.

#include "sigmasa/analysis.hpp"
#include "sigmasa/assignment.hpp"
#include "sigmasa/blocktri.hpp"
#include "sigmasa/core.hpp"
#include "sigmasa/dae.hpp"
#include "sigmasa/digraph.hpp"
#include "sigmasa/errors.hpp"
#include "sigmasa/fineblock.hpp"
#include "sigmasa/matching.hpp"
#include "sigmasa/oracle.hpp"
#include "sigmasa/report.hpp"
#include "sigmasa/sigfile.hpp"
