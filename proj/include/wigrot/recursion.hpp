#pragma once

#include <vector>

#include "wigrot/triangle.hpp"

// Recursive engine: fills a degree-n subspace of rotation coefficients in
// O(n^2) time from two seed layers (m' = 0 from closed-form Legendre values,
// m' = 1 from one cross-degree step) followed by two same-subspace sweeps
// that propagate layers away from m' = 0.  All arithmetic is deterministic:
// identical inputs give bit-identical triangles.

namespace wigrot {

// Seed layer m' = 0: H_n^{0,m}(beta) for m = 0..n.  Requires beta in [0, pi].
std::vector<double> layer_m0(int n, double beta);

// Seed layer m' = 1: H_n^{1,m}(beta) for m = 1..n (n >= 1).  Uses the
// degree-(n+1) m' = 0 layer internally.
std::vector<double> layer_m1(int n, double beta);

// Propagate layers m' = 2..n (forward) and m' = -1..-n (backward) from the
// seeded layers 0 and 1 of t.  Exposed separately so experiments can run the
// sweeps on synthetic seed data; compute_subspace calls it internally.
void run_sweeps(CoeffTriangle& t);

// Full subspace at degree n.  Requires beta in [0, pi].
CoeffTriangle compute_subspace(int n, double beta);

// Subspaces for all degrees n = 0..p-1 sharing one Legendre table.
// Bit-identical to p independent compute_subspace calls.
std::vector<CoeffTriangle> compute_all(int p, double beta);

}  // namespace wigrot
