#include "transit_hl/raptor.hpp"

#include <algorithm>

#include "mc_engine.hpp"
#include "round_engine.hpp"

namespace transit_hl {

EatResult raptor_eat(const Timetable &tt, const TransferGraph &transfers, StopId s, StopId t,
                     Time tau, const RaptorOptions &options) {
    detail::RoundEngine engine(tt, &transfers, nullptr);
    return engine.run(s, t, tau, options);
}

McResult mc_raptor(const Timetable &tt, const TransferGraph &transfers, StopId s, StopId t,
                   Time tau, const McOptions &options) {
    detail::McEngine engine(tt, &transfers, nullptr);
    return engine.run(s, t, tau, options);
}

std::vector<McValue> pareto_filter(std::vector<McValue> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<McValue> keep;
    for (const McValue &v : values) {
        // sorted by arrival first, so only kept values can dominate v
        bool dominated = std::any_of(keep.begin(), keep.end(), [&](const McValue &o) {
            return o.arrival <= v.arrival && o.trips <= v.trips && o.walk <= v.walk;
        });
        if (!dominated) keep.push_back(v);
    }
    return keep;
}

}  // namespace transit_hl
