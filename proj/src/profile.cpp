#include "transit_hl/profile.hpp"

#include <algorithm>

namespace transit_hl {

std::vector<ProfileEntry> profile_pareto(std::vector<ProfileEntry> entries) {
    // by departure descending, then arrival ascending; keep strict arrival drops
    std::sort(entries.begin(), entries.end(), [](const ProfileEntry &a, const ProfileEntry &b) {
        return a.dep != b.dep ? a.dep > b.dep : a.arr < b.arr;
    });
    std::vector<ProfileEntry> keep;
    Time best = kInfinity;
    for (const ProfileEntry &e : entries) {
        if (e.arr < best) {
            keep.push_back(e);
            best = e.arr;
        }
    }
    std::reverse(keep.begin(), keep.end());
    return keep;
}

ProfileResult finish_profile(std::vector<ProfileEntry> entries, Time from, Time to,
                             Time walk_duration) {
    ProfileResult result;
    result.walk_duration = walk_duration;
    if (from > to) return result;
    entries = profile_pareto(std::move(entries));
    std::vector<ProfileEntry> clipped;
    for (const ProfileEntry &e : entries) {
        if (e.dep < from) continue;
        if (e.dep <= to) {
            clipped.push_back(e);
            continue;
        }
        if (clipped.empty() || clipped.back().dep < to) clipped.push_back(ProfileEntry{to, e.arr});
        break;
    }
    for (const ProfileEntry &e : clipped) {
        if (!reachable(walk_duration) || e.arr - e.dep < walk_duration) result.entries.push_back(e);
    }
    return result;
}

}  // namespace transit_hl
