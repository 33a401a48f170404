#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pomapf/belief.hpp"
#include "pomapf/rng.hpp"

namespace pomapf {

// Broadcast medium for map deltas. A delta emitted at step t is delivered to each
// other agent at step t + latency unless dropped for that recipient.
class CommChannel {
public:
    CommChannel(int n_agents, int latency = 0, double drop_rate = 0.0, std::uint64_t seed = 0);

    int latency() const { return latency_; }
    double drop_rate() const { return drop_rate_; }

    void broadcast(std::shared_ptr<const MapDelta> delta, int step);
    void broadcast(MapDelta delta, int step) {
        broadcast(std::make_shared<const MapDelta>(std::move(delta)), step);
    }

    // Deltas due for `recipient` at `step`, in emission order. Each is returned once.
    std::vector<std::shared_ptr<const MapDelta>> receive(int recipient, int step);

    // Drops bookkeeping for deliveries that are due by `step`.
    void end_step(int step);

    std::size_t in_flight() const { return pending_.size(); }

private:
    struct InFlight {
        std::shared_ptr<const MapDelta> delta;
        int deliver_at = 0;
        std::vector<std::uint8_t> outstanding;
    };

    int n_agents_;
    int latency_;
    double drop_rate_;
    Rng rng_;
    std::vector<InFlight> pending_;
};

}  // namespace pomapf
