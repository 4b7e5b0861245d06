#include "transit_hl/hl_raptor.hpp"

#include "mc_engine.hpp"
#include "round_engine.hpp"

namespace transit_hl {

EatResult hlraptor_eat(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time tau,
                       const RaptorOptions &options) {
    detail::RoundEngine engine(tt, nullptr, &hl);
    return engine.run(s, t, tau, options);
}

McResult hlmc_raptor(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time tau,
                     const McOptions &options) {
    detail::McEngine engine(tt, nullptr, &hl);
    return engine.run(s, t, tau, options);
}

HlRaptorRouter::HlRaptorRouter(const Timetable &tt, const HubLabeling &hl)
    : tt_(tt), hl_(hl), reversed_tt_(tt.reversed()), reversed_hl_(hl.reversed()),
      forward_(std::make_unique<detail::RoundEngine>(tt_, nullptr, &hl_)),
      backward_(std::make_unique<detail::RoundEngine>(reversed_tt_, nullptr, &reversed_hl_)) {}

HlRaptorRouter::~HlRaptorRouter() = default;

EatResult HlRaptorRouter::eat(StopId s, StopId t, Time tau, const RaptorOptions &options) {
    return forward_->run(s, t, tau, options);
}

Time HlRaptorRouter::latest_departure(StopId s, StopId t, Time arrival,
                                      const ProfileOptions &options) {
    RaptorOptions back;
    back.max_rounds = options.max_rounds;
    back.target_pruning = options.target_pruning;
    back.min_transfer_times = options.min_transfer_times;
    back.require_trip = true;
    back.charge = TransferCharge::AtAlighting;
    back.build_journey = false;
    EatResult r = backward_->run(t, s, -arrival, back);
    return r.reachable() ? -r.arrival : -kInfinity;
}

ProfileResult HlRaptorRouter::profile(StopId s, StopId t, Time from, Time to,
                                      const ProfileOptions &options) {
    const Time walk = hl_.query(s, t);
    if (from > to || s == t) return finish_profile({}, from, to, walk);
    RaptorOptions fwd;
    fwd.max_rounds = options.max_rounds;
    fwd.target_pruning = options.target_pruning;
    fwd.min_transfer_times = options.min_transfer_times;
    fwd.require_trip = true;
    fwd.build_journey = false;

    std::vector<ProfileEntry> entries;
    Time tau = from;
    while (tau <= to) {
        EatResult f = forward_->run(s, t, tau, fwd);
        if (!f.reachable()) break;
        Time dep = latest_departure(s, t, f.arrival, options);
        // The backward search can miss only journeys that walking to the
        // target dominates; never step backwards in that case.
        if (dep < tau) dep = tau;
        entries.push_back(ProfileEntry{dep, f.arrival});
        tau = dep + 1;
    }
    return finish_profile(std::move(entries), from, to, walk);
}

ProfileResult hlpr_raptor(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time from,
                          Time to, const ProfileOptions &options) {
    HlRaptorRouter router(tt, hl);
    return router.profile(s, t, from, to, options);
}

}  // namespace transit_hl
