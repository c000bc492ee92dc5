#include "motiv/reduction.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "motiv/errors.hpp"

namespace motiv {

ReductionOutput subset_sum_to_sms(const SubsetSumInstance& ss,
                                  const Rational& salience,
                                  std::optional<Rational> epsilon) {
    int n = static_cast<int>(ss.values.size());
    if (n < 1) fail(Errc::FormatError, "subset-sum instance needs n >= 1");
    for (long long x : ss.values)
        if (x < 0) fail(Errc::FormatError, "subset-sum values must be >= 0");
    if (ss.target < 0) fail(Errc::FormatError, "subset-sum target must be >= 0");
    if (ss.target == 0)
        fail(Errc::ZeroTarget,
             "target 0 is trivially solvable by the empty set; no graph emitted");
    if (salience <= Rational(1))
        fail(Errc::FormatError, "the reduction requires salience b > 1");

    const Rational& b = salience;
    Rational big_w(ss.target);

    // the a-path weights: each level leaves (1 - 1/b) of the remainder
    Rational w_a3t = Rational(1) / b;
    Rational w_a2a3 = (Rational(1) - w_a3t) / b;
    Rational w_a1a2 = (Rational(1) - w_a2a3 - w_a3t) / b;
    Rational w_a0a1 = (Rational(1) - w_a1a2 - w_a2a3 - w_a3t) / b;
    Rational w_sa0_base =
        (Rational(1) - w_a0a1 - w_a1a2 - w_a2a3 - w_a3t) / b;

    Rational eps_limit = w_a1a2 / big_w;
    Rational eps;
    if (epsilon) {
        eps = *epsilon;
        if (!(Rational(0) < eps) || !(eps < eps_limit))
            fail(Errc::InvalidEpsilon,
                 "epsilon must lie strictly inside (0, " +
                     eps_limit.to_string() + ")");
    } else {
        eps = eps_limit / Rational(2);
        // keep w(c_{n+1}c_{n+2}) = w(a2a3) - 2e - 2e/(b-1) non-negative
        Rational cap = w_a2a3 * (b - Rational(1)) / (Rational(2) * b);
        eps = min(eps, cap);
    }

    Rational w_sa0 = w_sa0_base + eps / b;
    Rational w_a0c1 = w_a0a1 + Rational(2) * eps / (b - Rational(1));
    Rational w_tail =
        w_a2a3 - Rational(2) * eps - Rational(2) * eps / (b - Rational(1));
    Rational w_last = w_a3t + eps;
    if (w_tail.is_negative())
        fail(Errc::InvalidEpsilon,
             "epsilon makes w(c_{n+1}c_{n+2}) negative; pick a smaller one");

    auto ci = [](int i) { return "c" + std::to_string(i); };
    auto ci_star = [](int i) { return "c" + std::to_string(i) + "*"; };

    GraphData data;
    data.vertices = {"s", "a0", "a1", "a2", "a3"};
    for (int i = 1; i <= n; ++i) {
        data.vertices.push_back(ci(i));
        data.vertices.push_back(ci_star(i));
    }
    data.vertices.push_back(ci(n + 1));
    data.vertices.push_back(ci(n + 2));
    data.vertices.push_back("t");

    data.edges.push_back({"s", "a0", w_sa0});
    data.edges.push_back({"a0", "a1", w_a0a1});
    data.edges.push_back({"a1", "a2", w_a1a2});
    data.edges.push_back({"a2", "a3", w_a2a3});
    data.edges.push_back({"a3", "t", w_a3t});
    data.edges.push_back({"a0", ci(1), w_a0c1});
    for (int i = 1; i <= n; ++i) {
        Rational direct =
            Rational(ss.values[i - 1]) * w_a1a2 / big_w;
        data.edges.push_back({ci(i), ci(i + 1), direct});
        data.edges.push_back({ci(i), ci_star(i), Rational(0)});
        data.edges.push_back({ci_star(i), ci(i + 1), Rational(0)});
    }
    data.edges.push_back({ci(n + 1), ci(n + 2), w_tail});
    data.edges.push_back({ci(n + 2), "t", w_last});

    ReductionOutput out;
    out.instance = PlanningInstance::make(TaskGraph::validate(data), "s", "t",
                                          Rational(1), b);
    out.epsilon = eps;
    for (const std::string& name : data.vertices) out.roles[name] = name;
    return out;
}

std::optional<std::vector<size_t>> solve_subset_sum(const SubsetSumInstance& ss) {
    for (long long x : ss.values)
        if (x < 0) fail(Errc::FormatError, "subset-sum values must be >= 0");
    if (ss.target < 0) return std::nullopt;
    if (ss.target == 0) return std::vector<size_t>{};

    size_t n = ss.values.size();
    if (ss.target <= 1'000'000) {
        // table DP with predecessor reconstruction; zeros never help
        size_t w = static_cast<size_t>(ss.target);
        std::vector<int> setter(w + 1, -1);
        std::vector<bool> reach(w + 1, false);
        reach[0] = true;
        for (size_t i = 0; i < n; ++i) {
            long long x = ss.values[i];
            if (x == 0 || x > ss.target) continue;
            for (size_t v = w; v >= static_cast<size_t>(x); --v) {
                if (!reach[v] && reach[v - x]) {
                    reach[v] = true;
                    setter[v] = static_cast<int>(i);
                }
            }
        }
        if (!reach[w]) return std::nullopt;
        std::vector<size_t> chosen;
        size_t v = w;
        while (v > 0) {
            chosen.push_back(setter[v]);
            v -= static_cast<size_t>(ss.values[setter[v]]);
        }
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }
    if (n > 24)
        fail(Errc::InstanceTooLarge,
             "subset-sum oracle needs n <= 24 or target <= 10^6");

    // branch over items with suffix-sum pruning
    std::vector<long long> suffix(n + 1, 0);
    for (size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + ss.values[i];
    std::vector<size_t> chosen;
    std::function<bool(size_t, long long)> rec = [&](size_t i,
                                                     long long left) -> bool {
        if (left == 0) return true;
        if (i == n || left < 0 || suffix[i] < left) return false;
        chosen.push_back(i);
        if (rec(i + 1, left - ss.values[i])) return true;
        chosen.pop_back();
        return rec(i + 1, left);
    };
    if (!rec(0, ss.target)) return std::nullopt;
    return chosen;
}

}  // namespace motiv
