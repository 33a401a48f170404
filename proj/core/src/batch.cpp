#include "pomapf/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "pomapf/errors.hpp"

namespace pomapf {

namespace {

EpisodeRecord infeasible_record(const ScenarioConfig& config, std::uint64_t seed) {
    EpisodeRecord r;
    r.seed = seed;
    r.success = false;
    r.failure = FailureReason::InfeasibleInstance;
    r.makespan = config.max_steps;
    r.arrival_times.assign(static_cast<std::size_t>(config.agents), std::nullopt);
    r.mode_switches.assign(static_cast<std::size_t>(config.agents), 0);
    r.loop_events.assign(static_cast<std::size_t>(config.agents), 0);
    r.oscillations.assign(static_cast<std::size_t>(config.agents), 0);
    return r;
}

EpisodeRecord run_guarded(const ScenarioConfig& config, std::uint64_t seed) {
    try {
        return run_episode(config, seed);
    } catch (const InstanceInfeasible&) {
        return infeasible_record(config, seed);
    }
}

}  // namespace

std::vector<EpisodeRecord> run_batch_records(const ScenarioConfig& config, const BatchOptions& options) {
    config.validate();
    const auto count = static_cast<std::size_t>(config.instances);
    std::vector<EpisodeRecord> records(count);

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) records[i] = run_guarded(config, config.instance_seed(static_cast<int>(i)));
        return records;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        records[i] = run_guarded(config, config.instance_seed(static_cast<int>(i)));
                    } catch (...) {
                        const std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
    return records;
}

AggregateReport aggregate(const ScenarioConfig& config, std::span<const EpisodeRecord> records) {
    AggregateReport r;
    r.name = config.name;
    r.width = config.width;
    r.height = config.height;
    r.density = config.density;
    r.agents = config.agents;
    r.max_steps = config.max_steps;
    r.instances = static_cast<int>(records.size());
    r.regime = config.regime;
    r.loop_detection = config.loop_detection;
    if (records.empty()) return r;

    double makespan = 0.0;
    double completion = 0.0;
    double collisions = 0.0;
    for (const EpisodeRecord& e : records) {
        if (e.success) ++r.successes;
        if (e.failure == FailureReason::InfeasibleInstance) ++r.infeasible;
        makespan += e.makespan;
        completion += e.completion_rate();
        collisions += static_cast<double>(e.collisions);
        r.executed_conflicts += e.executed_conflicts;
    }
    const auto denom = static_cast<double>(records.size());
    r.sr = static_cast<double>(r.successes) / denom;
    r.el = makespan / denom;
    r.icr = completion / denom;
    r.mean_collisions = collisions / denom;
    return r;
}

AggregateReport run_batch(const ScenarioConfig& config, const BatchOptions& options) {
    const std::vector<EpisodeRecord> records = run_batch_records(config, options);
    return aggregate(config, records);
}

std::vector<AggregateReport> run_sweep(const ScenarioConfig& config, const BatchOptions& options) {
    std::vector<int> counts = config.agent_sweep;
    if (counts.empty()) counts.push_back(config.agents);
    std::vector<AggregateReport> reports;
    for (int agents : counts) {
        ScenarioConfig c = config;
        c.agents = agents;
        reports.push_back(run_batch(c, options));
    }
    return reports;
}

AblationSuite run_ablation_suite(const ScenarioConfig& base, const BatchOptions& options) {
    std::vector<int> counts = base.agent_sweep;
    if (counts.empty()) counts.push_back(base.agents);
    constexpr InfoRegime kRegimes[] = {InfoRegime::FullInformation, InfoRegime::SharedMap, InfoRegime::LocalOnly};

    AblationSuite suite;
    auto find = [&](int agents, InfoRegime regime, bool loop) -> const AggregateReport& {
        for (const AggregateReport& r : suite.reports) {
            if (r.agents == agents && r.regime == regime && r.loop_detection == loop) return r;
        }
        throw Error("ablation cell missing");
    };
    for (int agents : counts) {
        for (InfoRegime regime : kRegimes) {
            for (bool loop : {true, false}) {
                ScenarioConfig c = base;
                c.agents = agents;
                c.regime = regime;
                c.loop_detection = loop;
                suite.reports.push_back(run_batch(c, options));
            }
        }
        auto delta = [&](const AggregateReport& a, const AggregateReport& b, std::string label) {
            suite.deltas.push_back({agents, std::move(label), a.sr - b.sr, a.el - b.el, a.icr - b.icr});
        };
        delta(find(agents, InfoRegime::SharedMap, true), find(agents, InfoRegime::LocalOnly, true), "shared-vs-local");
        delta(find(agents, InfoRegime::FullInformation, true), find(agents, InfoRegime::SharedMap, true),
              "full-vs-shared");
        for (InfoRegime regime : kRegimes) {
            delta(find(agents, regime, true), find(agents, regime, false),
                  "loop-on-vs-off:" + std::string(to_string(regime)));
        }
    }
    return suite;
}

}  // namespace pomapf
