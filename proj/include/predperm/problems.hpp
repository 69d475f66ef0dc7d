#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "predperm/dp_clocal.hpp"
#include "predperm/dp_decomp.hpp"
#include "predperm/extended.hpp"
#include "predperm/permutation.hpp"

namespace predperm {

using Arc = std::pair<Element, Element>;

// Maximum Acyclic Subgraph: maximize the total weight of arcs (u, v) with u
// placed before v.
struct MasInstance {
  std::size_t n = 0;
  std::vector<Arc> arcs;
  std::vector<std::int64_t> weights;  // empty: every arc weighs 1
};

// Minimum Linear Arrangement: minimize the sum over edges of the distance
// between the endpoints' positions.
struct MlaInstance {
  std::size_t n = 0;
  std::vector<Arc> edges;  // unordered pairs
};

// 1|prec|sum C_j: minimize total completion time subject to precedences
// (u, v) meaning u runs before v.
struct ScheduleInstance {
  std::size_t n = 0;
  std::vector<std::int64_t> proc;
  std::vector<Arc> prec;
};

// Path TSP: minimize sum of d(sigma(p), sigma(p+1)); no closing edge.
struct TspInstance {
  std::size_t n = 0;
  std::vector<std::int64_t> dist;  // row-major n x n

  std::int64_t d(Element a, Element b) const { return dist[static_cast<std::size_t>(a) * n + b]; }
};

// Keyword auction with positive externalities within a window of c slots.
// Welfare: sum_i v_i * lambda_{slot(i)} * Q_i with
// Q_i = 1 - (1 - q_i) * prod_{ads j in the c slots above i} (1 - q_j w_ji(d)).
struct AuctionInstance {
  std::size_t n = 0;
  std::vector<double> v;
  std::vector<double> q;
  std::vector<double> lambda;  // zero-padded to n slots
  std::size_t c = 1;
  std::vector<double> w;  // dense: w[(j * n + i) * c + (d - 1)] for d in 1..c

  double influence(Element j, Element i, std::size_t d) const {
    if (d == 0 || d > c) return 0.0;
    return w[(static_cast<std::size_t>(j) * n + i) * c + (d - 1)];
  }
  void set_influence(Element j, Element i, std::size_t d, double value) {
    w[(static_cast<std::size_t>(j) * n + i) * c + (d - 1)] = value;
  }
};

using Instance = std::variant<MasInstance, MlaInstance, ScheduleInstance, TspInstance, AuctionInstance>;

std::size_t size_of(const Instance& instance);
std::string kind_name(const Instance& instance);  // "mas", "mla", "schedule", "tsp", "auction"
Sense sense_of(const Instance& instance);
bool is_decomposable(const Instance& instance);

// Throws std::invalid_argument describing the first violated invariant.
void validate(const Instance& instance);

IntValue value(const MasInstance& inst, const Permutation& sigma);
IntValue value(const MlaInstance& inst, const Permutation& sigma);
IntValue value(const ScheduleInstance& inst, const Permutation& sigma);
IntValue value(const TspInstance& inst, const Permutation& sigma);
RealValue value(const AuctionInstance& inst, const Permutation& sigma);
RealValue objective(const Instance& instance, const Permutation& sigma);

// Decomposition adapters (MAS, MLA, scheduling) and locality adapters
// (path TSP with c = 1, auctions with c = instance.c).
std::unique_ptr<DecomposableProblem> as_decomposable(const Instance& instance);
std::unique_ptr<CLocalProblem<std::int64_t>> as_clocal(const TspInstance& inst);
std::unique_ptr<CLocalProblem<double>> as_clocal(const AuctionInstance& inst);

// The same instance with element x renamed to old element order[x]; a
// permutation rho of the relabeled instance maps back as order[rho[p]].
Instance relabel(const Instance& instance, const Permutation& order);

struct BruteForceResult {
  RealValue value;
  Permutation order;  // lexicographically smallest optimal order
};

inline constexpr std::size_t kBruteForceMaxN = 10;

// Exhaustive search over all n! orders; refuses n > 10. Integer objectives
// compare exactly, auctions with a 1e-12 tie tolerance.
BruteForceResult brute_force(const Instance& instance);

// Number of optimal orders, by exhaustive search (n <= 10).
std::size_t count_optima(const Instance& instance);

// Equality of objective values: exact for integer kinds, 1e-9 for auctions.
bool same_value(const Instance& instance, const RealValue& a, const RealValue& b);

nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Instance generators.

enum class PlantedKind { mas_tournament, mla_path, sched_spt, sched_chain, tsp_cycle_gap };

std::string to_string(PlantedKind kind);
PlantedKind planted_kind_from_string(const std::string& name);
const std::vector<PlantedKind>& all_planted_kinds();

struct PlantedInstance {
  PlantedKind kind;
  Instance instance;
  Permutation sigma_star;  // an optimum (the unique one where the kind has one)
  RealValue optimum;
};

// sigma_star is uniform over permutations given the seed.
PlantedInstance generate_planted(PlantedKind kind, std::size_t n, std::uint64_t seed);

Permutation random_permutation(std::size_t n, std::mt19937_64& rng);

// Unstructured random instances for oracle-equivalence testing.
MasInstance random_mas(std::size_t n, double density, std::mt19937_64& rng, bool weighted = false);
MlaInstance random_mla(std::size_t n, double density, std::mt19937_64& rng);
ScheduleInstance random_schedule(std::size_t n, double prec_density, std::mt19937_64& rng);
TspInstance random_tsp(std::size_t n, std::int64_t max_distance, std::mt19937_64& rng);
AuctionInstance random_auction(std::size_t n, std::size_t c, std::mt19937_64& rng);

}  // namespace predperm
