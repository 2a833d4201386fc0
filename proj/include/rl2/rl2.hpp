#pragma once

// Umbrella header for the whole toolkit.

#include "rl2/check.hpp"
#include "rl2/countermodel.hpp"
#include "rl2/derivation_io.hpp"
#include "rl2/derived.hpp"
#include "rl2/eval.hpp"
#include "rl2/formula.hpp"
#include "rl2/model.hpp"
#include "rl2/parser.hpp"
#include "rl2/printer.hpp"
#include "rl2/render.hpp"
#include "rl2/rules.hpp"
#include "rl2/search.hpp"
#include "rl2/sequent.hpp"
#include "rl2/subst.hpp"
#include "rl2/symbols.hpp"
#include "rl2/witness.hpp"
