#pragma once

// Umbrella header: term rewriting restricted by forbidden patterns, the
// associated checkers and strategy encodings, the termination-preserving
// transformation to an ordinary TRS, analysis utilities, and the file format.

#include "fpr/errors.hpp"
#include "fpr/symbols.hpp"
#include "fpr/position.hpp"
#include "fpr/term.hpp"
#include "fpr/substitution.hpp"
#include "fpr/rewriting.hpp"
#include "fpr/pattern.hpp"
#include "fpr/checks.hpp"
#include "fpr/encodings.hpp"
#include "fpr/transform.hpp"
#include "fpr/analysis.hpp"
#include "fpr/parse.hpp"
#include "fpr/print.hpp"
