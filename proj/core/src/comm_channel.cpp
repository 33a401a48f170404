#include "pomapf/comm_channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace pomapf {

CommChannel::CommChannel(int n_agents, int latency, double drop_rate, std::uint64_t seed)
    : n_agents_(n_agents), latency_(latency), drop_rate_(drop_rate), rng_(seed) {
    if (n_agents < 0) throw std::invalid_argument("n_agents must be >= 0");
    if (latency < 0) throw std::invalid_argument("latency must be >= 0");
    if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) throw std::invalid_argument("drop_rate must lie in [0, 1]");
}

void CommChannel::broadcast(std::shared_ptr<const MapDelta> delta, int step) {
    InFlight entry{std::move(delta), step + latency_, std::vector<std::uint8_t>(static_cast<std::size_t>(n_agents_), 0)};
    bool any = false;
    for (int r = 0; r < n_agents_; ++r) {
        if (r == entry.delta->origin) continue;
        const bool dropped = rng_.bernoulli(drop_rate_);
        if (!dropped) {
            entry.outstanding[static_cast<std::size_t>(r)] = 1;
            any = true;
        }
    }
    if (any) pending_.push_back(std::move(entry));
}

std::vector<std::shared_ptr<const MapDelta>> CommChannel::receive(int recipient, int step) {
    std::vector<std::shared_ptr<const MapDelta>> due;
    for (InFlight& entry : pending_) {
        if (entry.deliver_at > step) continue;
        auto& flag = entry.outstanding[static_cast<std::size_t>(recipient)];
        if (!flag) continue;
        flag = 0;
        due.push_back(entry.delta);
    }
    return due;
}

void CommChannel::end_step(int step) {
    std::erase_if(pending_, [step](const InFlight& e) { return e.deliver_at <= step; });
}

}  // namespace pomapf
