#ifndef TOUGHHAM_TOUGHHAM_HPP
#define TOUGHHAM_TOUGHHAM_HPP

#include "classifier.hpp"
#include "cycle.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "matching.hpp"
#include "merge_engine.hpp"
#include "rational.hpp"
#include "recognizers.hpp"
#include "report.hpp"
#include "solver.hpp"
#include "two_factor.hpp"
#include "witness.hpp"

#endif
