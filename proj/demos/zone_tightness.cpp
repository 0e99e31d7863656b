// Build the factor-1 zone networks, rank them with the traditional walk,
// and show how close the authority outflow comes to its capacity limit.

#include <rankcap/rankcap.hpp>

#include <cstdio>

using namespace rankcap;

int main() {
    std::printf("%-9s %-13s %12s %12s %10s\n", "variant", "fan", "outflow", "limit",
                "rel.left");
    for (ZoneVariant variant : {ZoneVariant::tree, ZoneVariant::complex}) {
        const ZoneNetwork net = zone_graph(zone_spec(1, variant));
        for (FanKind mode : {FanKind::uniform, FanKind::preferential}) {
            const BoundReport rep = tightness_report(
                net.graph, net.fan, WalkModel::traditional(0.1), mode);
            std::printf("%-9s %-13s %12.6e %12.6e %10.4f\n",
                        variant == ZoneVariant::tree ? "tree" : "complex",
                        to_string(mode), rep.outflow, rep.bound,
                        rep.rel_left.value_or(0.0));
        }
    }

    // The closed-form solver reproduces the same numbers without building
    // any graph, which is how the million-node rows are handled.
    std::printf("\nclosed-form check (tree, uniform): outflow %.12e\n",
                zone_solve(zone_spec(1, ZoneVariant::tree), FanKind::uniform, 0.1)
                    .outflow);
    return 0;
}
