// Acceptance runs: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "limitid/complexity.hpp"
#include "limitid/diagonalize.hpp"
#include "limitid/families.hpp"
#include "limitid/iid_identifier.hpp"
#include "limitid/lock_time.hpp"
#include "limitid/prediction.hpp"
#include "limitid/sampling.hpp"
#include "limitid/typicality_identifier.hpp"
#include "support.hpp"

using namespace limitid;
using test::R;
using test::Rs;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool ok, const std::string& detail, Clock::time_point start) {
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s criterion %d: %s [%.2f s]\n", ok ? "PASS" : "FAIL", id, detail.c_str(), secs);
  std::fflush(stdout);
  failures += !ok;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < count;) body(k);
    });
  for (auto& t : pool) t.join();
}

std::vector<std::size_t> indices(const std::vector<IidStep>& steps) {
  std::vector<std::size_t> out;
  for (const auto& s : steps) out.push_back(s.index);
  return out;
}

std::vector<std::size_t> indices(const std::vector<TypStep>& steps) {
  std::vector<std::size_t> out;
  for (const auto& s : steps) out.push_back(s.index);
  return out;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Alphabet letters(std::size_t l) {
  std::vector<std::string> names;
  for (std::size_t s = 0; s < l; ++s) names.push_back(std::string(1, static_cast<char>('a' + s)));
  return Alphabet::finite(names);
}

bool pmf_normalized(const PmfProgram& p, std::size_t horizon) {
  const std::size_t top = p.alphabet().is_finite() ? p.alphabet().size() : horizon;
  Rational prefix = 0;
  for (std::size_t m = 0; m <= top; ++m) {
    if (sgn(p.tail_mass_after(m)) < 0 || prefix + p.tail_mass_after(m) != 1) return false;
    if (m < top) {
      if (sgn(p.mass(static_cast<Symbol>(m))) < 0) return false;
      prefix += p.mass(static_cast<Symbol>(m));
    }
  }
  return !p.alphabet().is_finite() || prefix == 1;
}

void criterion1() {
  const auto start = Clock::now();
  std::size_t pmfs = 0, measures = 0, bad = 0, skipped = 0;
  const Alphabet u = Alphabet::unbounded();
  std::vector<PmfProgram> ps = {make_geometric(u, R(1, 2)), make_geometric(u, R(1, 2), 1),
                                make_geometric(u, R(2, 3), 4), make_geometric(u, R(1, 9))};
  std::vector<MeasureProgram> ms;
  for (std::size_t l = 1; l <= 3; ++l) {
    const Alphabet ab = letters(l);
    std::vector<Rational> w;
    for (std::size_t s = 0; s < l; ++s) w.push_back(R(static_cast<long>(s + 1), static_cast<long>(l * (l + 1) / 2)));
    ps.push_back(make_uniform(ab));
    ps.push_back(make_categorical(ab, w));
    for (std::size_t s = 0; s < l; ++s) ps.push_back(make_point_mass(ab, static_cast<Symbol>(s)));
    for (const auto& fam : builtin_family_ids())
      for (std::size_t i = 1; i <= 4; ++i) {
        try {
          ps.push_back(make_simple_pmf(builtin_family(fam), i, ab));
        } catch (const Error&) {
          ++skipped;  // vanishing normalizer: not a pmf
        }
        const MeasureProgram mu = make_simple_measure(builtin_family(fam), i, ab);
        try {
          if (!test::chain_rule_holds(mu, 6)) ++bad;
          ++measures;
        } catch (const Error&) {
          ++skipped;
        }
      }
    for (const auto& p : std::vector<PmfProgram>(ps.end() - static_cast<std::ptrdiff_t>(l + 2), ps.end()))
      ms.push_back(lift_iid(p));
    ms.push_back(make_constant_sequence_measure(ab, static_cast<Symbol>(l - 1)));
    for (std::size_t k = 1; k <= l; ++k) ms.push_back(make_uniform_first_symbol(ab, k));
    std::vector<std::vector<Rational>> rows;
    for (std::size_t s = 0; s < l; ++s) {
      std::vector<Rational> row(l, 0);
      row[s] += R(2, 3);
      row[(s + 1) % l] += R(1, 3);
      rows.push_back(row);
    }
    ms.push_back(make_markov_measure(ab, std::vector<Rational>(l, R(1, static_cast<long>(l))), rows));
  }
  for (std::size_t n_star = 1; n_star <= 8; ++n_star) {
    ms.push_back(make_black_swan_mixture(n_star));
    ms.push_back(black_swan_pair(n_star).mu1);
  }
  for (const auto& p : ps) {
    bad += !pmf_normalized(p, 64);
    ++pmfs;
  }
  for (const auto& mu : ms) {
    bad += !test::chain_rule_holds(mu, 6);
    ++measures;
  }
  std::size_t tables = 0;
  SeededSource src(1);
  for (std::size_t l : {1, 2, 3, 7}) {
    FrequencyTable t;
    for (std::size_t k = 0; k < 500; ++k) {
      t.add(static_cast<Symbol>(src.next_word() % l));
      bad += sum(t.empirical()) != 1;
      ++tables;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(1, bad == 0 && secs < 1.0,
         fmt("%.0f pmfs, %.0f measures (|x|<=6, |L|<=3), ", static_cast<double>(pmfs), static_cast<double>(measures)) +
             fmt("%.0f empirical tables; violations %.0f; time %.3f s (< 1 s)", static_cast<double>(tables),
                 static_cast<double>(bad), secs),
         start);
}

void criterion2() {
  const auto start = Clock::now();
  const Alphabet l = test::abc();
  const std::vector<PmfProgram> pmfs = {
      make_categorical(l, Rs({{1, 3}, {1, 3}, {1, 3}})), make_categorical(l, Rs({{2, 5}, {3, 10}, {3, 10}})),
      make_categorical(l, Rs({{1, 4}, {1, 4}, {1, 2}})), make_categorical(l, Rs({{1, 2}, {1, 4}, {1, 4}})),
      make_categorical(l, Rs({{3, 10}, {1, 2}, {1, 5}}))};
  Rational sep = 1;
  for (std::size_t i = 0; i < pmfs.size(); ++i)
    for (std::size_t j = i + 1; j < pmfs.size(); ++j) {
      Rational d = 0;
      for (Symbol s = 0; s < 3; ++s) d = std::max<Rational>(d, abs(pmfs[i].mass(s) - pmfs[j].mass(s)));
      sep = std::min(sep, d);
    }
  const auto list = HypothesisList<PmfProgram>::finite(pmfs);
  constexpr std::size_t trials = 100, n_max = 20000;
  bool ok = sep >= R(1, 20);
  std::string detail = "min L_inf separation " + sep.get_str() + " (>= 1/20);";
  for (std::size_t k = 0; k < pmfs.size(); ++k) {
    std::vector<int> locked(trials), right(trials);
    parallel_for(trials, [&](std::size_t t) {
      SeededSource src(trial_seed(2000 + k, t));
      const auto g = indices(run_iid(list, l, draw_iid(pmfs[k], src, n_max), n_max));
      locked[t] = lock_time(g).has_value();
      right[t] = g.back() == k + 1;
    });
    const double lock_rate = std::count(locked.begin(), locked.end(), 1) / double(trials);
    const double right_rate = std::count(right.begin(), right.end(), 1) / double(trials);
    ok = ok && lock_rate >= 0.95 && right_rate >= 0.95;
    detail += fmt(" k=%.0f lock %.2f final %.2f;", double(k + 1), lock_rate, right_rate);
  }
  report(2, ok, detail + " (>= 0.95 each)", start);
}

void criterion3() {
  const auto start = Clock::now();
  const Alphabet u = Alphabet::unbounded();
  const std::vector<PmfProgram> pmfs = {make_geometric(u, R(1, 2)), make_geometric(u, R(1, 2), 1)};
  const auto list = HypothesisList<PmfProgram>::finite(pmfs);
  constexpr std::size_t trials = 50, n_max = 20000;
  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < pmfs.size(); ++k) {
    std::vector<int> right(trials);
    parallel_for(trials, [&](std::size_t t) {
      SeededSource src(trial_seed(3000 + k, t));
      right[t] = run_iid(list, u, draw_iid(pmfs[k], src, n_max), n_max).back().index == k + 1;
    });
    const double rate = std::count(right.begin(), right.end(), 1) / double(trials);
    ok = ok && rate >= 0.90;
    detail += fmt("source %.0f final correct %.2f; ", double(k + 1), rate);
  }
  report(3, ok, detail + "(>= 0.90)", start);
}

void criterion4() {
  const auto start = Clock::now();
  const Alphabet coin = Alphabet::finite({"t", "h"});
  const PmfProgram half = make_uniform(coin);
  constexpr std::size_t seeds = 100, step = 1000, n_max = 100000;
  std::vector<std::size_t> violations(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    SeededSource src(trial_seed(4000, s));
    const Sequence x = draw_iid(half, src, n_max);
    std::size_t heads = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      heads += x[n - 1] == 1;
      if (n % step == 0) {
        // |1/2 - h/n|^2 * n >= ln n, exactly on the rational side
        violations[s] += !below_threshold(abs(R(1, 2) - make_rational(static_cast<long>(heads), static_cast<long>(n))), n);
      }
    }
  });
  std::size_t total = 0;
  for (auto v : violations) total += v;
  const double frac = total / double(seeds * (n_max / step));
  report(4, frac <= 0.02, fmt("violation fraction %.5f over %.0f checkpoints (<= 0.02)", frac, double(seeds * (n_max / step))),
         start);
}

void criterion5() {
  const auto start = Clock::now();
  const Alphabet ab = binary_alphabet();
  const MeasureProgram coin = lift_iid(make_uniform(ab));
  const MeasureProgram point = make_constant_sequence_measure(ab, 0);
  const auto list = HypothesisList<MeasureProgram>::finite({coin, point});
  const auto est = make_estimator("compress-default");
  constexpr std::size_t seeds = 50, lo = 512, n_max = 4096;
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<const char*, MeasureProgram>> sources = {{"a^n", point}, {"uniform", coin}};
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const std::size_t want = k == 0 ? 2 : 1;
    std::vector<int> good(seeds);
    parallel_for(seeds, [&](std::size_t s) {
      SeededSource src(trial_seed(5000 + k, s));
      const auto steps = run_typicality(list, ab, draw_from_measure(sources[k].second, src, n_max), n_max, est);
      bool g = true;
      for (std::size_t n = lo; n <= n_max; ++n)
        g = g && steps[n - 1].origin == want && steps[n - 1].index == steps[lo - 1].index;
      good[s] = g;
    });
    const double rate = std::count(good.begin(), good.end(), 1) / double(seeds);
    ok = ok && rate >= 0.90;
    detail += std::string("data ") + sources[k].first + fmt(": settled on the right copy over [512, 4096] in %.2f; ", rate);
  }
  report(5, ok, detail + "(>= 0.90)", start);
}

void criterion6() {
  const auto start = Clock::now();
  const Alphabet ab = binary_alphabet();
  const auto pair = black_swan_pair(8);
  const MeasureProgram uk = make_uniform_first_symbol(ab, 2);
  constexpr std::size_t n_max = 4096;
  const Sequence data(n_max, 0);
  const auto est = make_estimator("compress-default");
  const double c0 = static_cast<double>(est->overhead_bits());

  DeficiencyTrace trace(ab, est);
  const ListEntry<MeasureProgram> e1{pair.mu1, 1, 1}, e0{pair.mu0, 2, 2};
  double worst1 = -kImpossible, worst0 = -kImpossible;
  for (std::size_t n = 1; n <= n_max; ++n) {
    trace.append(0);
    worst1 = std::max(worst1, trace.deficiency(e1, n));
    worst0 = std::max(worst0, trace.deficiency(e0, n));
  }
  bool ok = worst1 <= c0 && worst0 <= c0 + 1;

  std::vector<MeasureProgram> order = {pair.mu1, pair.mu0, uk};
  std::vector<int> perm = {0, 1, 2};
  std::set<std::string> settled;
  std::size_t orderings = 0, locked = 0;
  do {
    std::vector<MeasureProgram> items;
    for (int p : perm) items.push_back(order[static_cast<std::size_t>(p)]);
    const auto steps = run_typicality(HypothesisList<MeasureProgram>::finite(items), ab, data, n_max, est);
    ++orderings;
    locked += lock_time(indices(steps)).has_value();
    settled.insert(items[steps.back().origin - 1].code());
  } while (std::next_permutation(perm.begin(), perm.end()));
  ok = ok && locked == orderings && settled.size() > 1;
  report(6, ok,
         fmt("max deficiency mu1 %.1f (<= %.0f), ", worst1, c0) + fmt("mu0 %.1f (<= %.0f); ", worst0, c0 + 1) +
             fmt("locked %.0f/%.0f orderings, %.0f distinct settled measures (> 1)", double(locked), double(orderings),
                 double(settled.size())),
         start);
}

void criterion7() {
  const auto start = Clock::now();
  const auto pair = black_swan_pair(8);
  const Sequence ctx(8, 0);
  const Prediction p1 = predict_measure(pair.mu1, ctx);
  const Prediction p0 = predict_measure(pair.mu0, ctx);
  const bool ok = p1.probabilities == Rs({{1, 1}, {0, 1}}) && p0.probabilities == Rs({{1, 2}, {1, 2}});
  report(7, ok, "after a^8: mu1 gives " + to_string(p1) + ", mu0 gives " + to_string(p0) + " (exact)", start);
}

void criterion8() {
  const auto start = Clock::now();
  const Alphabet ab = binary_alphabet();
  const std::vector<PmfProgram> pmfs = {make_categorical(ab, Rs({{1, 2}, {1, 2}})),
                                        make_categorical(ab, Rs({{1, 10}, {9, 10}})),
                                        make_categorical(ab, Rs({{9, 10}, {1, 10}}))};
  std::vector<MeasureProgram> lifts;
  for (const auto& p : pmfs) lifts.push_back(lift_iid(p));
  const auto pmf_list = HypothesisList<PmfProgram>::finite(pmfs);
  const auto measure_list = HypothesisList<MeasureProgram>::finite(lifts);
  const auto est = make_estimator("compress-default");
  constexpr std::size_t seeds = 50, n_max = 4096;
  std::vector<int> agree(seeds), typ_right(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    SeededSource src(trial_seed(8000, s));
    const std::size_t k = s % pmfs.size();
    const Sequence x = draw_iid(pmfs[k], src, n_max);
    const auto typ = run_typicality(measure_list, ab, x, n_max, est);
    const auto freq = run_iid(pmf_list, ab, x, n_max);
    agree[s] = same_masses(pmfs[typ.back().origin - 1], pmfs[freq.back().origin - 1]);
    typ_right[s] = typ.back().origin == k + 1;
  });
  const double rate = std::count(agree.begin(), agree.end(), 1) / double(seeds);
  const double right = std::count(typ_right.begin(), typ_right.end(), 1) / double(seeds);
  report(8, rate >= 0.90,
         fmt("identical settled pmfs in %.2f (>= 0.90); typicality settled on the source in %.2f", rate, right), start);
}

void criterion9() {
  const auto start = Clock::now();
  std::mt19937_64 rng(9);
  const Alphabet u = Alphabet::unbounded();
  const Alphabet wide = letters(20);
  std::size_t cases = 0, distinct = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const bool finite = trial % 2 == 0;
    const Alphabet& ab = finite ? wide : u;
    const std::size_t m = rng() % 11;
    std::vector<PmfProgram> prefix;
    for (std::size_t i = 0; i < m; ++i) {
      switch (rng() % 3) {
        case 0:
          prefix.push_back(diagonalize(prefix, ab));  // copies of earlier outputs
          break;
        case 1:
          if (finite) {
            std::vector<Rational> w(20);
            long total = 0;
            std::vector<long> raw(20);
            for (auto& r : raw) total += r = static_cast<long>(rng() % 4);
            if (total == 0) raw[0] = total = 1;
            for (std::size_t s = 0; s < 20; ++s) w[s] = R(raw[s], total);
            prefix.push_back(make_categorical(ab, w));
          } else {
            prefix.push_back(make_geometric(ab, R(1 + static_cast<long>(rng() % 6), 7), rng() % 3));
          }
          break;
        default:
          if (finite)
            prefix.push_back(rng() % 2 ? make_uniform(ab) : make_point_mass(ab, static_cast<Symbol>(rng() % 4)));
          else
            prefix.push_back(make_geometric(ab, R(1, 2), rng() % 3));
      }
    }
    const PmfProgram d = diagonalize(prefix, ab);
    bool differs = pmf_normalized(d, 64);
    for (const auto& q : prefix) differs = differs && !same_masses(d, q);
    ++cases;
    distinct += differs;
  }
  report(9, distinct == cases, fmt("diagonal pmf differs from every listed pmf in %.0f/%.0f prefixes (100%%)",
                                   double(distinct), double(cases)),
         start);
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number; default runs all.
  const std::vector<void (*)()> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                       criterion6, criterion7, criterion8, criterion9};
  std::vector<std::size_t> chosen;
  for (int a = 1; a < argc; ++a) {
    const int k = std::atoi(argv[a]);
    if (k < 1 || k > 9) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[a]);
      return 2;
    }
    chosen.push_back(static_cast<std::size_t>(k - 1));
  }
  if (chosen.empty())
    for (std::size_t k = 0; k < all.size(); ++k) chosen.push_back(k);
  const auto start = Clock::now();
  for (std::size_t k : chosen) {
    try {
      all[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), false, std::string("exception: ") + e.what(), Clock::now());
    }
  }
  std::printf("%d of %zu criteria failed; total %.1f s\n", failures, chosen.size(),
              std::chrono::duration<double>(Clock::now() - start).count());
  return failures == 0 ? 0 : 1;
}
