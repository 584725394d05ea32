#pragma once

// Reference implementations used to cross-check the library. None of them call the
// library's graph or kernel algorithms; they only use its data types for input and output.

#include <random>
#include <string>
#include <vector>

#include "causalbox/graph.hpp"
#include "causalbox/kernel.hpp"
#include "causalbox/rational.hpp"

namespace oracle {

using causalbox::CausalDag;
using causalbox::Kernel;
using causalbox::Rational;

using Rng = std::mt19937_64;

// Enumerates every simple path of the skeleton and applies the blocking rule per path.
bool pathSeparated(const CausalDag& g, const std::vector<std::string>& a, const std::vector<std::string>& b,
                   const std::vector<std::string>& z);

// Random DAG on `observed` binary vertices (declared in a shuffled topological order) with up
// to `latents` latent roots, each pointing at two or more observed vertices.
CausalDag randomDag(Rng& rng, int observed, int latents, double edgeProbability = 0.4);

// Every DAG whose edges respect the order v0 < v1 < ... over n observed vertices.
std::vector<CausalDag> allOrderedDags(int n);

// Strictly positive random CPTs (latents of the given cardinality); the observed marginal is
// computed by summing the full joint over every assignment of every vertex.
Kernel randomBayesNet(const CausalDag& g, Rng& rng, int latentCardinality = 4);

// Positive rational weights summing to one.
std::vector<Rational> randomWeights(Rng& rng, std::size_t n, int maxNumerator = 9);

// Bipartite boxes p(a,b|x,y) with variables A,B | X,Y, built from their defining formulas.
Kernel prBox(int alpha, int beta, int gamma);
Kernel deterministicBox(int fa, int fb);  // f: 0 const0, 1 const1, 2 identity, 3 negation
std::vector<Kernel> nsVertexList();       // 16 deterministic boxes then 8 PR boxes
Kernel randomNsBox(Rng& rng);

// Convex combination computed entry by entry.
Kernel mixture(const std::vector<Kernel>& parts, const std::vector<Rational>& weights);

// p(a,b|x) = q(a,b|x,y=a) for a box q(a,b|x,y): the instrumental post-selection.
Kernel instrumentalProjection(const Kernel& q);

// Best CHSH winning probability over all deterministic strategies, by direct enumeration.
Rational chshClassicalMax();

// max_a sum_b max_x p(a,b|x) computed from the raw entries of p(a,b|x).
Rational instrumentalValue(const Kernel& p);

// "abc abc" strings of a deterministic kernel p(a,b,c|x), one outcome per x row.
std::string outcomeRows(const Kernel& k);

}  // namespace oracle
