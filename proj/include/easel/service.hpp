#pragma once

#include <memory>
#include <string>

#include "easel/agent.hpp"

namespace easel {

struct ServiceOptions {
    double ticks_per_second = 60;  // pace of the simulated clock; <= 0 leaves it to advance()
    int max_poll_ms = 20000;       // upper bound for /events long-polls
};

// HTTP front end over a running simulation.
//   GET  /status
//   GET  /auctions
//   GET  /auctions/{id}
//   POST /auctions/{id}/bids      {"amount": "<base units>"}, Authorization: Bearer <session>
//   GET  /timeline/{account}      account label or hex id
//   GET  /events?since=N&wait_ms=M
// Amounts travel as decimal strings. Handlers read under a shared lock; the
// pacing thread and bid submissions are the only writers.
class GatewayService {
public:
    explicit GatewayService(std::unique_ptr<Simulation> sim, ServiceOptions options = {});
    ~GatewayService();
    GatewayService(const GatewayService&) = delete;
    GatewayService& operator=(const GatewayService&) = delete;

    // Binds and serves on a background thread; returns the bound port.
    // Port 0 picks a free one.
    int start(const std::string& host, int port);
    // Blocks until stop() is called from another thread or a signal handler.
    void wait();
    void stop();

    // Advances the simulated clock by `ticks` (paced runs do this on a timer).
    void advance(Tick ticks);
    bool finished() const;

    // Runs `fn` with read-only access to the simulation.
    template <class Fn>
    auto with_simulation(Fn&& fn) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    const Simulation& sim_for_reading() const;
    void lock_shared() const;
    void unlock_shared() const;
};

template <class Fn>
auto GatewayService::with_simulation(Fn&& fn) const {
    struct Guard {
        const GatewayService& s;
        ~Guard() { s.unlock_shared(); }
    };
    lock_shared();
    Guard g{*this};
    return fn(sim_for_reading());
}

}  // namespace easel
