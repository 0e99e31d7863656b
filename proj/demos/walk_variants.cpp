// Solve every walk variant on a small random graph and verify that each
// one matches the traditional walk at its equivalent boring factor.

#include <rankcap/rankcap.hpp>

#include <cmath>
#include <cstdio>
#include <vector>

using namespace rankcap;

int main() {
    const UndirectedGraph g = random_connected_graph(40, 25, 7);
    const FanSet fan = random_fan_set(g.node_count(), 11);
    const TeleportVector s = teleport_for(g, fan, FanKind::uniform);
    const double zeta = 0.1;

    const std::vector<WalkModel> models = {
        WalkModel::traditional(zeta),
        WalkModel::lazy(zeta),
        WalkModel::generalized_lazy(zeta, 0.3),
        WalkModel::backstep_single(zeta, 0.2),
        WalkModel::backstep_multi(zeta, 0.2),
    };

    SolveOptions direct;
    direct.path = SolvePath::direct;

    std::printf("%-18s %10s %12s %14s\n", "variant", "zeta'", "iterations",
                "gap vs trad");
    for (const WalkModel& m : models) {
        const RankVector own = rank(g, s, m, direct);
        const RankVector trad =
            rank(g, s, WalkModel::traditional(m.equivalent_boring_factor()));
        double l1 = 0.0;
        for (NodeId v = 0; v < g.node_count(); ++v)
            l1 += std::abs(own.values[v] - trad.values[v]);
        std::printf("%-18s %10.6f %12zu %14.3e\n", to_string(m.kind),
                    m.equivalent_boring_factor(), own.iterations, l1);
    }
    return 0;
}
