#include "tpd/contraction.hpp"

#include "tpd/detail/rng.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

namespace tpd {

namespace {

std::vector<int> normalize_domain(const FiniteMetricSpace& space,
                                  std::vector<int> domain) {
  if (domain.empty()) {
    domain.resize(space.size());
    for (int i = 0; i < space.size(); ++i) domain[i] = i;
    return domain;
  }
  for (int p : domain) {
    if (p < 0 || p >= space.size()) {
      throw std::invalid_argument("domain point " + std::to_string(p) +
                                  " is out of range");
    }
  }
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  return domain;
}

BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  BigInt result(1);
  for (int i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;  // exact: the partial product is a binomial coefficient
  }
  return result;
}

// min(C(n, k), cap). Monotone partial products make the early cap exit
// safe, and keep every intermediate well inside 128 bits.
std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > cap) return cap;
  }
  return static_cast<std::uint64_t>(result);
}

constexpr std::uint64_t kUnrankCap =
    std::numeric_limits<std::uint64_t>::max() / 2;

// Positions (ascending, in [0, m)) of the combination with the given
// lexicographic rank. Ranks handled here are always < the budget, so the
// capped binomial never distorts a comparison.
std::vector<int> unrank_combination(std::uint64_t rank, int m, int arity) {
  std::vector<int> pos(arity);
  int candidate = 0;
  for (int slot = 0; slot < arity; ++slot) {
    const int remaining = arity - slot;
    for (;; ++candidate) {
      const std::uint64_t with_candidate =
          binomial_capped(m - candidate - 1, remaining - 1, kUnrankCap);
      if (rank < with_candidate) break;
      rank -= with_candidate;
    }
    pos[slot] = candidate++;
  }
  return pos;
}

// Incremental tuple walker: enumerates `count` combinations starting at
// lexicographic rank `first`, maintaining prefix sums of both the original
// and the image pairwise distances so each step costs O(arity) distance
// additions. The visitor returns false to abort.
template <typename Visitor>
void walk_range(const FiniteMetricSpace& space, const SelfMap& map,
                const std::vector<int>& dom, int arity, std::uint64_t first,
                std::uint64_t count, Visitor&& visit) {
  if (count == 0) return;
  const int m = static_cast<int>(dom.size());
  std::vector<int> pos = unrank_combination(first, m, arity);
  std::vector<Rational> orig(arity), img(arity);

  auto recompute_from = [&](int depth) {
    for (int t = depth; t < arity; ++t) {
      Rational o = (t > 0) ? orig[t - 1] : Rational(0);
      Rational i = (t > 0) ? img[t - 1] : Rational(0);
      const int point = dom[pos[t]];
      const int image = map(point);
      for (int u = 0; u < t; ++u) {
        o += space.distance(dom[pos[u]], point);
        i += space.distance(map(dom[pos[u]]), image);
      }
      orig[t] = std::move(o);
      img[t] = std::move(i);
    }
  };
  recompute_from(0);

  for (std::uint64_t done = 0;; ) {
    if (!visit(pos, orig[arity - 1], img[arity - 1])) return;
    if (++done == count) return;
    int j = arity - 1;
    while (pos[j] == m - arity + j) --j;  // in-range: ranks stay below C(m, arity)
    ++pos[j];
    for (int t = j + 1; t < arity; ++t) pos[t] = pos[t - 1] + 1;
    recompute_from(j);
  }
}

struct Candidate {
  Rational ratio{-1};      // below every real ratio (ratios are >= 0)
  std::vector<int> positions;

  void offer_in_order(const Rational& ratio_in, const std::vector<int>& pos) {
    // Caller visits tuples in lexicographic order: strict improvement keeps
    // the earliest witness.
    if (ratio_in > ratio) {
      ratio = ratio_in;
      positions = pos;
    }
  }

  void offer_unordered(const Rational& ratio_in, const std::vector<int>& pos) {
    if (ratio_in > ratio ||
        (ratio_in == ratio && (positions.empty() || pos < positions))) {
      ratio = ratio_in;
      positions = pos;
    }
  }
};

// Merge worker results; workers are indexed by ascending rank ranges, so a
// strict comparison keeps the lexicographically first witness.
Candidate merge_ordered(std::vector<Candidate> parts) {
  Candidate best = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].ratio > best.ratio) best = std::move(parts[i]);
  }
  return best;
}

Candidate merge_unordered(std::vector<Candidate> parts) {
  Candidate best = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Candidate& c = parts[i];
    if (c.ratio > best.ratio ||
        (c.ratio == best.ratio && !c.positions.empty() &&
         (best.positions.empty() || c.positions < best.positions))) {
      best = std::move(c);
    }
  }
  return best;
}

// Runs `body(part)` on `jobs` threads (inline when jobs == 1), rethrowing
// the first worker exception.
template <typename Body>
void run_parts(int parts, Body&& body) {
  if (parts == 1) {
    body(0);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(parts);
  threads.reserve(parts);
  for (int p = 0; p < parts; ++p) {
    threads.emplace_back([&, p] {
      try {
        body(p);
      } catch (...) {
        errors[p] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void check_arity_domain(int arity, std::size_t domain_size) {
  if (arity < 2) throw std::invalid_argument("arity must be at least 2");
  if (static_cast<std::size_t>(arity) > domain_size) {
    throw std::invalid_argument(
        "arity " + std::to_string(arity) + " exceeds the domain size " +
        std::to_string(domain_size));
  }
}

}  // namespace

const char* mode_name(EnumerationMode mode) {
  return mode == EnumerationMode::Exhaustive ? "exhaustive" : "sampled";
}

Rational total_pairwise_distance(const FiniteMetricSpace& space,
                                 std::span<const int> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("tuple needs at least two points");
  }
  for (int p : points) {
    if (p < 0 || p >= space.size()) {
      throw std::invalid_argument("tuple point " + std::to_string(p) +
                                  " is out of range");
    }
  }
  Rational sum(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      sum += space.distance(points[i], points[j]);
    }
  }
  return sum;
}

ContractionReport contraction_coefficient(const FiniteMetricSpace& space,
                                          const SelfMap& map,
                                          const CoefficientOptions& options) {
  require_compatible(space, map);
  const std::vector<int> dom = normalize_domain(space, options.domain);
  const int arity = options.arity;
  check_arity_domain(arity, dom.size());
  if (options.budget == 0) throw std::invalid_argument("budget must be positive");
  if (options.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  const int m = static_cast<int>(dom.size());
  const BigInt total_exact = binomial_exact(m, arity);
  const bool exhaustive = total_exact <= BigInt(options.budget);

  ContractionReport report;
  report.arity = arity;

  if (exhaustive) {
    const auto total = static_cast<std::uint64_t>(total_exact);
    const int jobs = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(options.jobs), total));
    std::vector<Candidate> parts(jobs);
    const std::uint64_t chunk = total / jobs;
    const std::uint64_t leftover = total % jobs;
    run_parts(jobs, [&](int p) {
      const std::uint64_t count = chunk + (static_cast<std::uint64_t>(p) < leftover ? 1 : 0);
      const std::uint64_t first =
          chunk * static_cast<std::uint64_t>(p) +
          std::min<std::uint64_t>(static_cast<std::uint64_t>(p), leftover);
      Candidate& local = parts[p];
      walk_range(space, map, dom, arity, first, count,
                 [&](const std::vector<int>& pos, const Rational& den,
                     const Rational& num) {
                   local.offer_in_order(num / den, pos);
                   return true;
                 });
    });
    Candidate best = merge_ordered(std::move(parts));
    report.alpha_hat = std::move(best.ratio);
    report.witness.reserve(arity);
    for (int p : best.positions) report.witness.push_back(dom[p]);
    report.tuples_examined = total;
    report.mode = EnumerationMode::Exhaustive;
    return report;
  }

  // Sampled fallback: `budget` tuples, each drawn from its own
  // counter-seeded generator so the result does not depend on how the
  // samples are split across jobs.
  const std::uint64_t samples = options.budget;
  const int jobs = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(options.jobs), samples));
  std::vector<Candidate> parts(jobs);
  const std::uint64_t chunk = samples / jobs;
  const std::uint64_t leftover = samples % jobs;
  run_parts(jobs, [&](int p) {
    const std::uint64_t count = chunk + (static_cast<std::uint64_t>(p) < leftover ? 1 : 0);
    const std::uint64_t first =
        chunk * static_cast<std::uint64_t>(p) +
        std::min<std::uint64_t>(static_cast<std::uint64_t>(p), leftover);
    Candidate& local = parts[p];
    std::vector<int> pos(arity);
    std::vector<int> tuple(arity);
    for (std::uint64_t s = first; s < first + count; ++s) {
      std::mt19937_64 rng(detail::splitmix64(options.sample_seed + s));
      // Floyd's distinct-sampling loop.
      pos.clear();
      for (int j = m - arity; j < m; ++j) {
        const int v = static_cast<int>(
            detail::bounded(rng, static_cast<std::uint64_t>(j) + 1));
        if (std::find(pos.begin(), pos.end(), v) != pos.end()) {
          pos.push_back(j);
        } else {
          pos.push_back(v);
        }
      }
      std::sort(pos.begin(), pos.end());
      Rational den(0), num(0);
      for (int i = 0; i < arity; ++i) tuple[i] = dom[pos[i]];
      for (int i = 0; i < arity; ++i) {
        for (int j = i + 1; j < arity; ++j) {
          den += space.distance(tuple[i], tuple[j]);
          num += space.distance(map(tuple[i]), map(tuple[j]));
        }
      }
      local.offer_unordered(num / den, pos);
    }
  });
  Candidate best = merge_unordered(std::move(parts));
  report.alpha_hat = std::move(best.ratio);
  report.witness.reserve(arity);
  for (int p : best.positions) report.witness.push_back(dom[p]);
  report.tuples_examined = samples;
  report.mode = EnumerationMode::Sampled;
  return report;
}

CertifyResult certify(const FiniteMetricSpace& space, const SelfMap& map,
                      int arity, const Rational& alpha,
                      std::vector<int> domain) {
  require_compatible(space, map);
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");
  const std::vector<int> dom = normalize_domain(space, std::move(domain));
  check_arity_domain(arity, dom.size());

  const BigInt total_exact =
      binomial_exact(static_cast<int>(dom.size()), arity);
  CertifyResult result;
  result.certified = true;
  // Sequential with early abort: the answer is the lexicographically first
  // counterexample, so parallel ranges would have to finish anyway.
  BigInt done(0);
  while (done < total_exact) {
    const BigInt span = std::min<BigInt>(total_exact - done,
                                         BigInt(kDefaultTupleBudget));
    walk_range(space, map, dom, arity, static_cast<std::uint64_t>(done),
               static_cast<std::uint64_t>(span),
               [&](const std::vector<int>& pos, const Rational& den,
                   const Rational& num) {
                 if (num > alpha * den) {
                   result.certified = false;
                   result.counterexample.reserve(pos.size());
                   for (int p : pos) result.counterexample.push_back(dom[p]);
                   return false;
                 }
                 return true;
               });
    if (!result.certified) break;
    done += span;
  }
  return result;
}

std::optional<std::vector<int>> find_ratio_at_least(
    const FiniteMetricSpace& space, const SelfMap& map, int arity,
    const Rational& threshold, std::vector<int> domain) {
  require_compatible(space, map);
  const std::vector<int> dom = normalize_domain(space, std::move(domain));
  check_arity_domain(arity, dom.size());

  const BigInt total_exact =
      binomial_exact(static_cast<int>(dom.size()), arity);
  std::optional<std::vector<int>> found;
  BigInt done(0);
  while (done < total_exact && !found) {
    const BigInt span = std::min<BigInt>(total_exact - done,
                                         BigInt(kDefaultTupleBudget));
    walk_range(space, map, dom, arity, static_cast<std::uint64_t>(done),
               static_cast<std::uint64_t>(span),
               [&](const std::vector<int>& pos, const Rational& den,
                   const Rational& num) {
                 if (num >= threshold * den) {
                   std::vector<int> tuple;
                   tuple.reserve(pos.size());
                   for (int p : pos) tuple.push_back(dom[p]);
                   found = std::move(tuple);
                   return false;
                 }
                 return true;
               });
    done += span;
  }
  return found;
}

Rational multiset_coefficient(const FiniteMetricSpace& space,
                              const SelfMap& map, int tuple_size,
                              int support_size) {
  require_compatible(space, map);
  if (tuple_size < 3) {
    throw std::invalid_argument("tuple_size must be at least 3");
  }
  if (support_size < 2 || support_size > tuple_size - 1) {
    throw std::invalid_argument(
        "support_size must satisfy 2 <= support_size <= tuple_size - 1");
  }
  if (support_size > space.size()) {
    throw std::invalid_argument("support_size exceeds the number of points");
  }

  const int n = space.size();
  const int k = support_size;
  Rational best(-1);

  std::vector<int> support(k);
  std::vector<int> mult(k);

  // Ratio of a tuple with the given support points and multiplicities:
  // pairs inside one group contribute zero, a cross pair (u, v) appears
  // mult[u] * mult[v] times.
  auto evaluate = [&]() {
    Rational den(0), num(0);
    for (int u = 0; u < k; ++u) {
      for (int v = u + 1; v < k; ++v) {
        const Rational weight(mult[u] * mult[v]);
        den += weight * space.distance(support[u], support[v]);
        num += weight * space.distance(map(support[u]), map(support[v]));
      }
    }
    const Rational ratio = num / den;
    if (ratio > best) best = ratio;
  };

  // Multiplicities: compositions of tuple_size into k positive parts.
  auto patterns = [&](auto&& self, int slot, int left) -> void {
    if (slot == k - 1) {
      mult[slot] = left;
      evaluate();
      return;
    }
    for (int take = 1; take <= left - (k - 1 - slot); ++take) {
      mult[slot] = take;
      self(self, slot + 1, left - take);
    }
  };

  auto supports = [&](auto&& self, int slot, int from) -> void {
    if (slot == k) {
      patterns(patterns, 0, tuple_size);
      return;
    }
    for (int p = from; p <= n - (k - slot); ++p) {
      support[slot] = p;
      self(self, slot + 1, p + 1);
    }
  };
  supports(supports, 0, 0);
  return best;
}

std::vector<LipschitzViolation> pointwise_lipschitz_check(
    const FiniteMetricSpace& space, const SelfMap& map, int at,
    const Rational& alpha) {
  require_compatible(space, map);
  if (at < 0 || at >= space.size()) {
    throw std::invalid_argument("point index out of range");
  }
  if (alpha < 0) throw std::invalid_argument("alpha must be >= 0");

  std::vector<LipschitzViolation> violations;
  for (int y = 0; y < space.size(); ++y) {
    if (y == at) continue;
    Rational image = space.distance(map(at), map(y));
    Rational allowed = alpha * space.distance(at, y);
    if (image > allowed) {
      violations.push_back({y, std::move(image), std::move(allowed)});
    }
  }
  return violations;
}

}  // namespace tpd
