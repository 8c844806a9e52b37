#pragma once

// Umbrella header.

#include "posdec/error.hpp"
#include "posdec/scale.hpp"
#include "posdec/formula.hpp"
#include "posdec/parser.hpp"
#include "posdec/interpretation.hpp"
#include "posdec/truth_table.hpp"
#include "posdec/dpll.hpp"
#include "posdec/solver.hpp"
#include "posdec/bases.hpp"
#include "posdec/instance_io.hpp"
#include "posdec/semantic.hpp"
#include "posdec/cuts.hpp"
#include "posdec/conflicts.hpp"
#include "posdec/argumentation.hpp"
#include "posdec/acceptability.hpp"
#include "posdec/generator.hpp"
#include "posdec/report.hpp"
