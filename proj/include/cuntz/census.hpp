#ifndef CUNTZ_CENSUS_HPP
#define CUNTZ_CENSUS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "permdecide.hpp"
#include "rooted_trees.hpp"

namespace cuntz {

/// Worker count: CUNTZ_WORKERS when set to a positive integer, otherwise the
/// available hardware parallelism.
inline unsigned default_workers() {
  if (const char* env = std::getenv("CUNTZ_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(i) for i in [0, count) on `workers` threads. Results must be
/// written to per-index slots so the caller's fold stays deterministic.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

inline std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw std::overflow_error("count overflows 64 bits");
    r *= base;
  }
  return r;
}

struct ShapeFlags {
  std::string shape;
  int leaves = 0;
  int height = 0;
  bool endo = false;
  bool diagonal = false;
  bool aut = false;
};

/// One orbit of balanced f-tuples under relabeling of W_n^{k-1}. The
/// representative has f_1 equal to the preorder labeling of `shape`; `tuple`
/// concatenates f_2, ..., f_n.
struct OrbitRecord {
  std::string shape;
  std::vector<std::uint32_t> tuple;
  std::uint64_t orbit_size = 0;  // labeled f-tuples in the orbit
  int diagonal_m = 0;
  bool expanded = false;
  std::uint64_t aut = 0;        // m-assignments of the representative giving automorphisms
  std::uint64_t undecided = 0;
  int max_h = 0;
  int max_m = 0;

  std::string key() const {
    std::string s = shape + ":";
    for (auto v : tuple) s += std::to_string(v) + ",";
    return s;
  }
};

struct CensusReport {
  int n = 2;
  int k = 1;
  std::string mode;
  std::uint64_t b = 0;
  std::uint64_t d = 0;
  std::uint64_t undecided = 0;
  std::optional<std::uint64_t> class_count;
  std::vector<ShapeFlags> shapes;
  std::uint64_t orbits = 0;  // diagonal-passing orbits (orbit mode)
  int max_inverse_level = 0;
  int max_stabilization = 0;
  double runtime_seconds = 0;
  std::vector<OrbitRecord> records;
  std::vector<PermUnitary> automorphisms;  // when collected
};

struct CensusOptions {
  int budget_m = 12;
  unsigned workers = 0;  // 0: default_workers()
  std::uint64_t table_cap = kDefaultTableCap;
  std::string checkpoint;  // orbit mode: JSONL log, resumed when present
  bool collect_automorphisms = false;
  bool expand = true;       // orbit mode: count d, not only b
  bool first_aut_only = false;  // stop expanding a representative at its first automorphism
};

inline unsigned resolve_workers(const CensusOptions& opt) { return opt.workers ? opt.workers : default_workers(); }

namespace detail {

inline void mark_shapes(std::map<std::string, ShapeFlags>& flags, const TreeDiagnostic& td, bool diag, bool aut) {
  for (const auto& t : td.trees) {
    if (!t.is_tree) continue;
    auto& f = flags[t.shape];
    f.shape = t.shape;
    f.leaves = t.leaf_count;
    f.height = t.height;
    f.endo = true;
    f.diagonal = f.diagonal || diag;
    f.aut = f.aut || aut;
  }
}

inline std::vector<ShapeFlags> sorted_shapes(const std::map<std::string, ShapeFlags>& flags) {
  std::vector<ShapeFlags> out;
  for (const auto& [s, f] : flags) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const ShapeFlags& a, const ShapeFlags& b) {
    return std::tie(a.leaves, a.height, a.shape) < std::tie(b.leaves, b.height, b.shape);
  });
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Brute force

/// Every sigma in P_n^k with the full theoretical stabilization budget and no
/// synchronization shortcut; the independent oracle for small levels.
inline CensusReport brute_census(int n, int k, const CensusOptions& opt = {}) {
  check_alphabet(n);
  if (k < 1 || ipow(n, k) > 9) throw std::invalid_argument("brute census needs n^k <= 9");
  const auto start = std::chrono::steady_clock::now();
  const auto size = static_cast<std::uint32_t>(ipow(n, k));

  AutOptions aopt;
  aopt.use_sync = false;
  aopt.budget_m = theoretical_bound(n, k);
  aopt.table_cap = opt.table_cap;

  struct Partial {
    std::uint64_t b = 0, d = 0, undecided = 0;
    int max_h = 0, max_m = 0;
    std::map<std::string, ShapeFlags> flags;
    std::vector<PermUnitary> auts;
  };
  // chunks fix the first two images
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chunks;
  for (std::uint32_t a = 0; a < size; ++a)
    for (std::uint32_t c = 0; c < size; ++c)
      if (a != c || size == 1) chunks.emplace_back(a, c);
  if (size == 1) chunks.resize(1);
  std::vector<Partial> parts(chunks.size());

  parallel_for(chunks.size(), resolve_workers(opt), [&](std::size_t ci) {
    Partial& p = parts[ci];
    std::vector<std::uint32_t> perm;
    if (size == 1) {
      perm = {0};
    } else {
      perm = {chunks[ci].first, chunks[ci].second};
      for (std::uint32_t x = 0; x < size; ++x)
        if (x != chunks[ci].first && x != chunks[ci].second) perm.push_back(x);
    }
    do {
      const PermUnitary sigma(n, k, perm);
      const auto td = tree_check(reduced_maps(sigma));
      const bool diag = decide_diagonal(sigma).yes();
      bool aut = false;
      if (diag) {
        ++p.b;
        const auto v = decide_automorphism(sigma, aopt);
        if (v.is_aut()) {
          aut = true;
          ++p.d;
          p.max_h = std::max(p.max_h, v.h);
          p.max_m = std::max(p.max_m, v.m);
          if (opt.collect_automorphisms) p.auts.push_back(sigma);
        } else if (v.outcome == AutVerdict::Outcome::Undecided) {
          ++p.undecided;
        }
      }
      detail::mark_shapes(p.flags, td, diag, aut);
    } while (size > 2 && std::next_permutation(perm.begin() + 2, perm.end()));
  });

  CensusReport r;
  r.n = n;
  r.k = k;
  r.mode = "brute";
  std::map<std::string, ShapeFlags> flags;
  for (auto& p : parts) {
    r.b += p.b;
    r.d += p.d;
    r.undecided += p.undecided;
    r.max_inverse_level = std::max(r.max_inverse_level, p.max_h);
    r.max_stabilization = std::max(r.max_stabilization, p.max_m);
    for (const auto& [s, f] : p.flags) {
      auto& g = flags[s];
      g.shape = f.shape;
      g.leaves = f.leaves;
      g.height = f.height;
      g.endo = g.endo || f.endo;
      g.diagonal = g.diagonal || f.diagonal;
      g.aut = g.aut || f.aut;
    }
    for (auto& a : p.auts) r.automorphisms.push_back(std::move(a));
  }
  r.shapes = detail::sorted_shapes(flags);
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Orbit search

namespace detail {

/// Balanced completions (f_2, ..., f_n) of a fixed labeled tree f_1 in which
/// every f_j is a rooted tree and the f-tuple passes the diagonal criterion.
/// Calls emit(maps, height) with all n maps.
class CompletionSearch {
public:
  CompletionSearch(int n, const ParentArray& f1) : n_(n), size_(f1.size()), maps_(n, ParentArray(f1.size(), kUndefined)) {
    maps_[0] = f1;
    cap_.assign(size_, n);
    for (auto t : f1) --cap_[t];
    fixed_.assign(n, 0);
  }

  template <class Emit>
  void run(Emit&& emit) {
    if (n_ == 1) return;
    rec(1, 0, emit);
  }

private:
  template <class Emit>
  void rec(int j, std::size_t v, Emit& emit) {
    if (v == size_) {
      if (fixed_[j] != 1) return;
      const std::vector<ParentArray> prefix(maps_.begin(), maps_.begin() + j + 1);
      const auto pg = pair_graph(prefix, size_);
      if (!pg.acyclic) return;
      if (j + 1 == n_) {
        emit(maps_, pg.height);
        return;
      }
      rec(j + 1, 0, emit);
      return;
    }
    ParentArray& f = maps_[j];
    for (std::uint32_t t = 0; t < size_; ++t) {
      if (cap_[t] == 0) continue;
      if (t == v) {
        if (fixed_[j] != 0) continue;
      } else if (closes_cycle(f, static_cast<std::uint32_t>(v), t)) {
        continue;
      }
      f[v] = t;
      --cap_[t];
      if (t == v) ++fixed_[j];
      rec(j, v + 1, emit);
      if (t == v) --fixed_[j];
      ++cap_[t];
      f[v] = kUndefined;
    }
  }

  bool closes_cycle(const ParentArray& f, std::uint32_t v, std::uint32_t t) const {
    std::uint32_t x = t;
    for (std::size_t steps = 0; steps <= size_; ++steps) {
      if (x == v) return true;
      const std::uint32_t y = f[x];
      if (y == kUndefined || y == x) return false;
      x = y;
    }
    return true;
  }

  int n_;
  std::size_t size_;
  std::vector<ParentArray> maps_;
  std::vector<int> cap_;
  std::vector<int> fixed_;
};

/// Outcome of expanding one representative into its m-assignments.
struct Expansion {
  std::uint64_t aut = 0;
  std::uint64_t undecided = 0;
  int max_h = 0;
  int max_m = 0;
  std::vector<PermUnitary> auts;
};

/// For every state beta the n pairs (a, alpha) with f_a(alpha) = beta are
/// matched bijectively to the letters c, setting sigma(beta c) = a alpha. The
/// transition maps delta_c(beta) = alpha are checked for pair-graph cycles as
/// they are built; surviving sigma go through the full decision.
inline Expansion expand_assignments(int n, int k, const std::vector<ParentArray>& f, const CensusOptions& opt) {
  const std::size_t states = f[0].size();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> kids(states);
  for (int a = 0; a < n; ++a)
    for (std::uint32_t alpha = 0; alpha < states; ++alpha) kids[f[a][alpha]].emplace_back(a, alpha);
  for (const auto& c : kids)
    if (c.size() != static_cast<std::size_t>(n)) throw std::logic_error("f-tuple is not balanced");

  AutOptions aopt;
  aopt.use_sync = true;
  aopt.budget_m = opt.budget_m;
  aopt.table_cap = opt.table_cap;

  Expansion ex;
  std::vector<ParentArray> delta(n, ParentArray(states, kUndefined));
  std::vector<std::uint32_t> map(states * n);
  bool stop = false;

  auto rec = [&](auto&& self, std::size_t beta) -> void {
    if (stop) return;
    if (beta == states) {
      const PermUnitary sigma(n, k, map);  // bijectivity check
      const auto fam = reduced_maps(sigma);
      if (fam.f != f) throw std::logic_error("reconstructed sigma has different reduced maps");
      const auto v = decide_automorphism(sigma, aopt);
      if (v.is_aut()) {
        ++ex.aut;
        ex.max_h = std::max(ex.max_h, v.h);
        ex.max_m = std::max(ex.max_m, v.m);
        if (opt.collect_automorphisms) ex.auts.push_back(sigma);
        if (opt.first_aut_only) stop = true;
      } else if (v.outcome == AutVerdict::Outcome::Undecided) {
        ++ex.undecided;
      }
      return;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
      for (int c = 0; c < n; ++c) {
        const auto [a, alpha] = kids[beta][order[c]];
        map[beta * n + c] = static_cast<std::uint32_t>(a * states + alpha);
        delta[c][beta] = alpha;
      }
      if (pair_graph(delta, states).acyclic) self(self, beta + 1);
      if (stop) break;
    } while (std::next_permutation(order.begin(), order.end()));
    for (int c = 0; c < n; ++c) delta[c][beta] = kUndefined;
  };
  rec(rec, 0);
  return ex;
}

inline std::vector<std::uint32_t> relabeled_tuple(const std::vector<ParentArray>& maps, const std::vector<std::uint32_t>& g) {
  const std::size_t states = g.size();
  std::vector<std::uint32_t> out((maps.size() - 1) * states);
  for (std::size_t j = 1; j < maps.size(); ++j)
    for (std::size_t x = 0; x < states; ++x) out[(j - 1) * states + g[x]] = g[maps[j][x]];
  return out;
}

struct Checkpoint {
  std::map<std::string, OrbitRecord> done;
  std::ofstream out;
  std::mutex mutex;

  void open(const std::string& path, int n, int k, int budget) {
    if (path.empty()) return;
    const nlohmann::json header = {{"n", n}, {"k", k}, {"budget_m", budget}};
    bool fresh = true;
    {
      std::ifstream in(path);
      std::string line;
      if (in && std::getline(in, line) && !line.empty()) {
        fresh = false;
        if (nlohmann::json::parse(line) != header) throw std::runtime_error("checkpoint " + path + " belongs to a different run");
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          nlohmann::json j;
          try {
            j = nlohmann::json::parse(line);
          } catch (const nlohmann::json::exception&) {
            break;  // torn final line from an interrupted write
          }
          OrbitRecord r;
          r.shape = j.at("shape").get<std::string>();
          r.tuple = j.at("tuple").get<std::vector<std::uint32_t>>();
          r.aut = j.at("aut").get<std::uint64_t>();
          r.undecided = j.at("undecided").get<std::uint64_t>();
          r.max_h = j.at("max_h").get<int>();
          r.max_m = j.at("max_m").get<int>();
          r.expanded = true;
          done[r.key()] = r;
        }
      }
    }
    out.open(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write checkpoint " + path);
    if (fresh) out << header.dump() << "\n" << std::flush;
  }

  void append(const OrbitRecord& r) {
    if (!out.is_open()) return;
    const nlohmann::json j = {{"shape", r.shape}, {"tuple", r.tuple}, {"aut", r.aut},
                              {"undecided", r.undecided}, {"max_h", r.max_h}, {"max_m", r.max_m}};
    std::lock_guard lock(mutex);
    out << j.dump() << "\n" << std::flush;
  }
};

}  // namespace detail

inline bool orbit_feasible(int n, int k) { return k >= 1 && ipow(n, k - 1) <= 16 && n <= 9; }

/// Orbit-reduced census: f_1 runs over unlabeled tree shapes (fixed labeled
/// representative), completions are taken up to the automorphisms of that
/// tree, and every diagonal-passing representative is expanded into its
/// n!^{n^{k-1}} m-assignments to count automorphisms.
inline CensusReport orbit_census(int n, int k, const CensusOptions& opt = {}) {
  check_alphabet(n);
  if (!orbit_feasible(n, k)) throw std::invalid_argument("orbit census needs n^{k-1} <= 16");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t states = ipow(n, k - 1);
  const std::uint64_t states_fact = factorial(static_cast<int>(states));
  const std::uint64_t assignments = checked_pow(factorial(n), states);
  const auto shapes = feasible_shapes(n, static_cast<int>(states));
  const unsigned workers = resolve_workers(opt);

  // Phase 1: representatives, one task per shape.
  std::vector<std::vector<OrbitRecord>> per_shape(shapes.size());
  parallel_for(shapes.size(), workers, [&](std::size_t si) {
    const ParentArray t0 = tree_from_shape(shapes[si]);
    const auto autos = tree_automorphisms(t0);
    detail::CompletionSearch search(n, t0);
    search.run([&](const std::vector<ParentArray>& maps, int height) {
      std::vector<std::uint32_t> tuple;
      for (std::size_t j = 1; j < maps.size(); ++j) tuple.insert(tuple.end(), maps[j].begin(), maps[j].end());
      std::uint64_t stab = 0;
      for (const auto& g : autos) {
        const auto img = detail::relabeled_tuple(maps, g);
        if (img < tuple) return;
        if (img == tuple) ++stab;
      }
      OrbitRecord r;
      r.shape = shapes[si];
      r.tuple = std::move(tuple);
      r.orbit_size = states_fact / stab;
      r.diagonal_m = height;
      per_shape[si].push_back(std::move(r));
    });
  });

  CensusReport rep;
  rep.n = n;
  rep.k = k;
  rep.mode = "orbit";
  for (auto& v : per_shape)
    for (auto& r : v) rep.records.push_back(std::move(r));
  rep.orbits = rep.records.size();
  for (const auto& r : rep.records) rep.b += r.orbit_size * assignments;

  // Phase 2: m-assignments per representative.
  std::vector<std::vector<PermUnitary>> auts(rep.records.size());
  if (opt.expand) {
    detail::Checkpoint ckpt;
    const bool use_ckpt = !opt.checkpoint.empty() && !opt.collect_automorphisms && !opt.first_aut_only;
    if (use_ckpt) ckpt.open(opt.checkpoint, n, k, opt.budget_m);
    parallel_for(rep.records.size(), workers, [&](std::size_t i) {
      OrbitRecord& r = rep.records[i];
      if (use_ckpt) {
        auto it = ckpt.done.find(r.key());
        if (it != ckpt.done.end()) {
          r.aut = it->second.aut;
          r.undecided = it->second.undecided;
          r.max_h = it->second.max_h;
          r.max_m = it->second.max_m;
          r.expanded = true;
          return;
        }
      }
      std::vector<ParentArray> maps{tree_from_shape(r.shape)};
      for (int j = 1; j < n; ++j) maps.emplace_back(r.tuple.begin() + (j - 1) * states, r.tuple.begin() + j * states);
      auto ex = detail::expand_assignments(n, k, maps, opt);
      r.aut = ex.aut;
      r.undecided = ex.undecided;
      r.max_h = ex.max_h;
      r.max_m = ex.max_m;
      r.expanded = true;
      auts[i] = std::move(ex.auts);
      if (use_ckpt) ckpt.append(r);
    });
  }

  std::map<std::string, ShapeFlags> flags;
  for (const auto& s : shapes) {
    auto& f = flags[s];
    f.shape = s;
    f.leaves = shape_leaves(s);
    f.height = shape_height(s);
    f.endo = true;
  }
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& r = rep.records[i];
    flags[r.shape].diagonal = true;
    if (r.aut > 0) flags[r.shape].aut = true;
    rep.d += r.orbit_size * r.aut;
    rep.undecided += r.orbit_size * r.undecided;
    rep.max_inverse_level = std::max(rep.max_inverse_level, r.max_h);
    rep.max_stabilization = std::max(rep.max_stabilization, r.max_m);
    for (auto& a : auts[i]) rep.automorphisms.push_back(std::move(a));
  }
  rep.shapes = detail::sorted_shapes(flags);
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Some sigma in P_n^k whose f_1 is the preorder labeling of `shape`; the
/// remaining maps are filled greedily, so every feasible shape arises for a
/// permutative endomorphism.
inline PermUnitary endomorphism_with_shape(int n, int k, const std::string& shape) {
  const ParentArray f1 = tree_from_shape(shape);
  const std::size_t states = ipow(n, k - 1);
  if (f1.size() != states) throw std::invalid_argument("shape has the wrong number of vertices");
  std::vector<int> cap(states, n);
  for (auto t : f1) --cap[t];
  std::vector<ParentArray> f{f1};
  std::uint32_t t = 0;
  for (int j = 1; j < n; ++j) {
    ParentArray g(states);
    for (std::size_t x = 0; x < states; ++x) {
      while (cap[t] == 0) ++t;
      g[x] = t;
      --cap[t];
    }
    f.push_back(std::move(g));
  }
  std::vector<std::uint32_t> map(states * n);
  std::vector<int> used(states, 0);
  for (int a = 0; a < n; ++a)
    for (std::uint32_t alpha = 0; alpha < states; ++alpha) {
      const auto beta = f[a][alpha];
      map[beta * n + used[beta]++] = static_cast<std::uint32_t>(a * states + alpha);
    }
  return PermUnitary(n, k, std::move(map));
}

/// Tree shapes on n^{k-1} vertices flagged by whether they arise for some
/// permutative endomorphism, diagonal automorphism, or automorphism.
inline std::vector<ShapeFlags> shape_census(int n, int k, const CensusOptions& opt = {}) {
  CensusOptions o = opt;
  o.first_aut_only = true;
  o.collect_automorphisms = false;
  o.checkpoint.clear();
  auto rep = orbit_census(n, k, o);
  for (auto& s : rep.shapes) {
    const auto sigma = endomorphism_with_shape(n, k, s.shape);
    if (tree_check(reduced_maps(sigma)).trees[0].shape != s.shape) throw std::logic_error("shape witness mismatch");
  }
  return rep.shapes;
}

// ---------------------------------------------------------------------------
// Outer classes

struct ClassPartition {
  std::vector<std::vector<std::size_t>> classes;  // indices into the input
  std::vector<std::pair<std::size_t, std::size_t>> unresolved;
};

/// Groups automorphisms by inner equivalence against one leader per class.
inline ClassPartition class_representatives(const std::vector<PermUnitary>& reps, int search_cap = 16,
                                            const AutOptions& aopt = {}, unsigned workers = 0) {
  std::vector<WordPerm> tables(reps.size()), inverses(reps.size());
  parallel_for(reps.size(), workers ? workers : default_workers(), [&](std::size_t i) {
    const auto v = decide_automorphism(reps[i], aopt);
    if (!v.is_aut()) throw std::invalid_argument("class_representatives requires automorphisms");
    tables[i] = reps[i].word_perm().reduced();
    inverses[i] = v.inverse->word_perm().reduced();
  });
  ClassPartition out;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    bool placed = false;
    for (auto& cls : out.classes) {
      const auto rel = out_relation(tables[i], inverses[cls.front()], search_cap, aopt.table_cap);
      if (rel == OutRelation::Equal) {
        cls.push_back(i);
        placed = true;
        break;
      }
      if (rel == OutRelation::Unknown) out.unresolved.emplace_back(cls.front(), i);
    }
    if (!placed) out.classes.push_back({i});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json shapes_json(const std::vector<ShapeFlags>& shapes) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& s : shapes)
    list.push_back({{"shape", s.shape}, {"leaves", s.leaves}, {"height", s.height},
                    {"endo", s.endo}, {"diagonal", s.diagonal}, {"aut", s.aut}});
  return list;
}

/// Census JSON; runtime_seconds is only written when requested so that
/// comparison output is byte-stable.
inline nlohmann::json census_json(const CensusReport& r, bool with_runtime = true) {
  nlohmann::json j = {{"schema", 1},
                      {"n", r.n},
                      {"k", r.k},
                      {"mode", r.mode},
                      {"b", r.b},
                      {"d", r.d},
                      {"undecided", r.undecided},
                      {"orbits", r.orbits},
                      {"max_inverse_level", r.max_inverse_level},
                      {"max_stabilization", r.max_stabilization},
                      {"shapes", shapes_json(r.shapes)}};
  if (r.class_count) j["class_count"] = *r.class_count;
  if (with_runtime) j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

/// One CSV row per orbit representative.
inline std::string census_csv(const CensusReport& r) {
  std::string out = "shape,tuple,orbit_size,diagonal_m,aut,undecided,max_h,max_m\n";
  for (const auto& o : r.records) {
    std::string tuple;
    for (std::size_t i = 0; i < o.tuple.size(); ++i) tuple += (i ? " " : "") + std::to_string(o.tuple[i]);
    out += o.shape + "," + tuple + "," + std::to_string(o.orbit_size) + "," + std::to_string(o.diagonal_m) + "," +
           std::to_string(o.aut) + "," + std::to_string(o.undecided) + "," + std::to_string(o.max_h) + "," +
           std::to_string(o.max_m) + "\n";
  }
  return out;
}

}  // namespace cuntz

#endif  // CUNTZ_CENSUS_HPP
