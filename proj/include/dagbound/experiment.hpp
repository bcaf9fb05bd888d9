#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "gen.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "sim.hpp"
#include "task.hpp"

namespace dagbound {

// Inclusive sweep "start:stop:step"; the stop value is included when it lies
// within half a step of the grid.
struct Sweep {
    Rational start;
    Rational stop;
    Rational step;

    static Sweep parse(const std::string& text) {
        const auto c1 = text.find(':');
        if (c1 == std::string::npos) {
            const Rational v = Rational::parse(text);
            return {v, v, Rational(1)};
        }
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw MalformedInputError("sweep must be start:stop:step, got `" + text + "`");
        Sweep s{Rational::parse(text.substr(0, c1)),
                Rational::parse(text.substr(c1 + 1, c2 - c1 - 1)),
                Rational::parse(text.substr(c2 + 1))};
        if (!(s.step > Rational(0))) throw MalformedInputError("sweep step must be positive");
        return s;
    }

    std::vector<Rational> values() const {
        std::vector<Rational> out;
        const Rational half = step / Rational(2);
        for (Rational v = start; v <= stop + half; v = v + step) out.push_back(v);
        return out;
    }
};

inline std::string format_fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

struct BenchBoundsConfig {
    std::vector<int> cores{8};
    Sweep pf = Sweep::parse("0.1:0.6:0.05");
    int tasks_per_point = 50;
    std::uint64_t seed = 42;
    std::vector<BoundMethod> methods{BoundMethod::Optimal, BoundMethod::Graham,
                                     BoundMethod::Para, BoundMethod::LongestConstrained,
                                     BoundMethod::GreedyChains};
    GenConfig gen;
    bool layered = false;

    void validate() const {
        gen.validate();
        if (tasks_per_point < 1) throw MalformedInputError("tasks per point must be >= 1");
        if (cores.empty()) throw MalformedInputError("core list must not be empty");
        for (int m : cores)
            if (m < 1) throw MalformedInputError("core counts must be >= 1");
        if (methods.empty()) throw MalformedInputError("method list must not be empty");
    }
};

// Mean and standard deviation of the normalized bound per (m, pf, method)
// grid point. CSV schema: m,pf,tasks,method,mean_norm_bound,std_norm_bound
inline std::string bench_bounds_csv(const BenchBoundsConfig& config) {
    config.validate();
    std::string csv = "m,pf,tasks,method,mean_norm_bound,std_norm_bound\n";
    const std::vector<Rational> pfs = config.pf.values();
    for (std::size_t mi = 0; mi < config.cores.size(); ++mi) {
        const int m = config.cores[mi];
        for (std::size_t pi = 0; pi < pfs.size(); ++pi) {
            const double pf = pfs[pi].to_double();
            std::vector<std::vector<double>> norm(config.methods.size());
            for (int trial = 0; trial < config.tasks_per_point; ++trial) {
                GenConfig gen = config.gen;
                gen.parallelism_factor = pf;
                const std::uint64_t task_seed = derive_seed(config.seed, mi, pi, trial);
                const DagTask task = config.layered ? layer_by_layer(gen, task_seed)
                                                    : erdos_renyi(gen, task_seed);
                const TaskAnalysis a = analyze(task);
                const BoundCurves curves(a);
                for (std::size_t k = 0; k < config.methods.size(); ++k) {
                    const Rational b = curves.bound(config.methods[k], m);
                    const Rational ratio = normalized_bound(a, m, b);
                    internal_check(ratio >= Rational(1), "normalized bound fell below 1");
                    norm[k].push_back(ratio.to_double());
                }
            }
            for (std::size_t k = 0; k < config.methods.size(); ++k) {
                double mean = 0;
                for (double x : norm[k]) mean += x;
                mean /= static_cast<double>(norm[k].size());
                double var = 0;
                for (double x : norm[k]) var += (x - mean) * (x - mean);
                var /= static_cast<double>(norm[k].size());
                csv += std::to_string(m) + "," + format_fixed6(pf) + "," +
                       std::to_string(config.tasks_per_point) + "," +
                       method_name(config.methods[k]) + "," + format_fixed6(mean) + "," +
                       format_fixed6(std::sqrt(var)) + "\n";
            }
        }
    }
    return csv;
}

struct BenchSchedConfig {
    std::vector<int> cores{16, 32};
    Sweep nu = Sweep::parse("0.1:1:0.1");
    int sets_per_point = 100;
    std::uint64_t seed = 42;
    std::vector<BoundMethod> methods{BoundMethod::Optimal, BoundMethod::Graham,
                                     BoundMethod::Para, BoundMethod::LongestConstrained,
                                     BoundMethod::GreedyChains};
    GenConfig gen;
    Rational df_lo = Rational(0);
    Rational df_hi = Rational(1, 2);
    Rational pf_lo = Rational(1, 10);
    Rational pf_hi = Rational(6, 10);

    void validate() const {
        gen.validate();
        if (sets_per_point < 1) throw MalformedInputError("sets per point must be >= 1");
        if (cores.empty()) throw MalformedInputError("core list must not be empty");
        for (int m : cores)
            if (m < 1) throw MalformedInputError("core counts must be >= 1");
        if (methods.empty()) throw MalformedInputError("method list must not be empty");
    }
};

// Federated schedulability sweep. Each task receives the smallest dedicated
// core count whose bound meets its deadline; a set is accepted iff the core
// demands sum to at most m. Set seeds depend only on (m index, set index),
// so the same task stream is replayed across the nu sweep and acceptance is
// monotone by construction.
// CSV schema: m,nu,sets,method,accepted,total,ratio
inline std::string bench_sched_csv(const BenchSchedConfig& config) {
    config.validate();
    std::string csv = "m,nu,sets,method,accepted,total,ratio\n";
    const std::vector<Rational> nus = config.nu.values();
    for (std::size_t mi = 0; mi < config.cores.size(); ++mi) {
        const int m = config.cores[mi];
        std::vector<std::vector<int>> accepted(nus.size(),
                                               std::vector<int>(config.methods.size(), 0));
        for (int si = 0; si < config.sets_per_point; ++si) {
            const std::uint64_t set_seed = derive_seed(config.seed, mi, si);
            // pf drawn once per set, uniform over [pf_lo, pf_hi] in millionths
            SplitMix64 rng(derive_seed(set_seed, 0xb0a710adULL));
            GenConfig gen = config.gen;
            const Rational f(static_cast<std::int64_t>(rng.next_below(1000001)), 1000000);
            gen.parallelism_factor = (config.pf_lo + f * (config.pf_hi - config.pf_lo)).to_double();
            for (std::size_t ni = 0; ni < nus.size(); ++ni) {
                const TaskSet set =
                    build_taskset(m, nus[ni], gen, config.df_lo, config.df_hi, set_seed);
                for (std::size_t k = 0; k < config.methods.size(); ++k) {
                    std::int64_t demand = 0;
                    bool feasible = true;
                    for (const TaskSetMember& member : set.members) {
                        const TaskAnalysis a = analyze(member.task);
                        const FederatedResult r =
                            federated_core_count(a, config.methods[k], member.period);
                        if (!r.schedulable) { feasible = false; break; }
                        demand += r.cores;
                        if (demand > m) { feasible = false; break; }
                    }
                    if (feasible && demand <= m) ++accepted[ni][k];
                }
            }
        }
        for (std::size_t ni = 0; ni < nus.size(); ++ni)
            for (std::size_t k = 0; k < config.methods.size(); ++k) {
                const double ratio = static_cast<double>(accepted[ni][k]) /
                                     static_cast<double>(config.sets_per_point);
                csv += std::to_string(m) + "," + format_fixed6(nus[ni].to_double()) + "," +
                       std::to_string(config.sets_per_point) + "," +
                       method_name(config.methods[k]) + "," +
                       std::to_string(accepted[ni][k]) + "," +
                       std::to_string(config.sets_per_point) + "," + format_fixed6(ratio) + "\n";
            }
    }
    return csv;
}

struct ValidateReport {
    int trials = 0;
    int violations = 0;
    std::int64_t max_response = 0;
    Rational tightest_bound;
    BoundMethod tightest_method = BoundMethod::Optimal;
    std::vector<std::pair<BoundMethod, Rational>> bounds;
};

// Safety-oracle run: simulates `trials` random scenarios under rotating
// tie-break policies and checks the response time against every bound
// computed from the full WCETs.
inline ValidateReport validate_bounds(const TaskAnalysis& a, int m, int trials,
                                      std::uint64_t seed) {
    if (trials < 1) throw MalformedInputError("validate: trials must be >= 1");
    ValidateReport report;
    report.trials = trials;

    const BoundCurves curves(a);
    const BoundMethod methods[] = {BoundMethod::Optimal, BoundMethod::Graham, BoundMethod::Para,
                                   BoundMethod::LongestConstrained, BoundMethod::GreedyChains};
    for (BoundMethod method : methods) report.bounds.push_back({method, curves.bound(method, m)});
    report.tightest_bound = report.bounds.front().second;
    for (const auto& [method, b] : report.bounds)
        if (b < report.tightest_bound) { report.tightest_bound = b; report.tightest_method = method; }

    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(derive_seed(seed, trial));
        const ExecutionScenario scenario = trial == 0
                                               ? ExecutionScenario::full_wcet(a.task)
                                               : ExecutionScenario::uniform_random(a.task, rng);
        TieBreakPolicy policy;
        switch (trial % 4) {
            case 0: policy = TieBreakPolicy::smallest_id(); break;
            case 1: policy = TieBreakPolicy::fifo(); break;
            case 2: policy = TieBreakPolicy::largest_wcet_first(); break;
            default: policy = TieBreakPolicy::seeded_random(rng.next_u64()); break;
        }
        const ExecutionSequence seq = simulate(a.task, m, scenario, policy);
        internal_check(!verify_work_conserving(a.task, m, seq).has_value(),
                       "simulated sequence must be work conserving");
        const std::int64_t r = response_time(seq);
        report.max_response = std::max(report.max_response, r);
        for (const auto& [method, b] : report.bounds)
            if (Rational(r) > b) ++report.violations;
    }
    return report;
}

}  // namespace dagbound
