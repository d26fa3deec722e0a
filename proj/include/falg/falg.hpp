#pragma once

#include "falg/error.hpp"
#include "falg/polynomial.hpp"
#include "falg/scalar.hpp"
#include "falg/chart.hpp"
#include "falg/expression.hpp"
#include "falg/tensor.hpp"
#include "falg/anchored_bundle.hpp"
#include "falg/bracket_algebra.hpp"
#include "falg/cartan.hpp"
#include "falg/lie_algebroid.hpp"
#include "falg/free_algebroid.hpp"
#include "falg/morphism.hpp"
#include "falg/problem_spec.hpp"
#include "falg/cli.hpp"
