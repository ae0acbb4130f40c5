#pragma once

// Umbrella header.

#include "strew/bench.hpp"
#include "strew/builtin.hpp"
#include "strew/expression.hpp"
#include "strew/files.hpp"
#include "strew/frontend.hpp"
#include "strew/interpreter.hpp"
#include "strew/parser.hpp"
#include "strew/printer.hpp"
#include "strew/program.hpp"
#include "strew/semantics.hpp"
#include "strew/static_model.hpp"
#include "strew/term.hpp"
#include "strew/theory_file.hpp"
