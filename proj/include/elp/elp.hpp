// Convenience umbrella for the whole solver.

#ifndef ELP_ELP_HPP
#define ELP_ELP_HPP

#include "elp/aspcore.hpp"
#include "elp/bench.hpp"
#include "elp/cli.hpp"
#include "elp/epistemic.hpp"
#include "elp/ground.hpp"
#include "elp/search.hpp"
#include "elp/syntax.hpp"

#endif  // ELP_ELP_HPP
