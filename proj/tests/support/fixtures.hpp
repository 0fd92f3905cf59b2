#pragma once

#include <cstdint>
#include <random>

#include "gapr/lpsolve.hpp"
#include "gapr/netmodel.hpp"

namespace gapr::testkit {

/// Four vertices O, A, B, D (cap 100, no traverse time); a fast top route
/// O->A->D (t=1, cap 10 per arc), a slower bottom route O->B->D (t=1.1,
/// cap 10); one OD pair O->D with demand 15.
Instance diamond();

/// Random digraph with at most `max_vertices` vertices, random walk and
/// traverse times, and one OD pair whose destination is reachable.
Instance random_small_instance(std::mt19937_64& rng, std::size_t max_vertices);

/// Random feasible, bounded LP with n_vars <= 8 and rows <= 6. The first
/// row bounds the sum of all variables; right-hand sides come from a random
/// nonnegative point so the feasible set is nonempty.
LpProblem random_bounded_lp(std::mt19937_64& rng);

/// Full-scale generator settings: 50 vertices,
/// complete digraph, 25 OD pairs.
GeneratorConfig full_scale_config(std::uint64_t seed);

/// Full-scale instance whose demand fraction is the smallest value at
/// which every OD pair's direct arc is over capacity at equilibrium, times
/// `margin`. Also returns the fraction used.
std::pair<Instance, double> calibrated_full_scale_instance(std::uint64_t seed, double margin = 1.05);

}  // namespace gapr::testkit
