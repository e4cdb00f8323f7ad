#pragma once

// Umbrella header for the easytype library: a type checker for a small
// ML-like language with two inference orders (the traditional left-to-right
// one and a bias-reduced one) and structured, renderable diagnostics.

#include "easytype/ast.hpp"
#include "easytype/diagnostic.hpp"
#include "easytype/display.hpp"
#include "easytype/driver.hpp"
#include "easytype/infer_classic.hpp"
#include "easytype/infer_easy.hpp"
#include "easytype/lexer.hpp"
#include "easytype/parser.hpp"
#include "easytype/pretty.hpp"
#include "easytype/render.hpp"
#include "easytype/span.hpp"
#include "easytype/types.hpp"
#include "easytype/unify.hpp"
