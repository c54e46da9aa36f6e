#pragma once

#include <compat/conditional.hpp>
#include <compat/decide.hpp>
#include <compat/error.hpp>
#include <compat/graph.hpp>
#include <compat/ideal.hpp>
#include <compat/incidence.hpp>
#include <compat/problem.hpp>
#include <compat/rational.hpp>
#include <compat/symmetry.hpp>
