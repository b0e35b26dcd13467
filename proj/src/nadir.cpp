#include "gridfreq/nadir.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace gridfreq {

namespace {

// Largest value of the secant overestimator of the convex component minus the
// quadratic part over [a, b]; va/vb are the signed endpoint values of omega.
double signed_secant_bound(double k, double a, double b, double va, double vb) {
    double best = std::max(va, vb);
    if (k > 0.0) {
        const double ha = va + 0.5 * k * a * a;
        const double hb = vb + 0.5 * k * b * b;
        const double slope = (hb - ha) / (b - a);
        const double t_star = slope / k;
        if (t_star > a && t_star < b) {
            best = std::max(best, ha + slope * (t_star - a) - 0.5 * k * t_star * t_star);
        }
    }
    return best;
}

double bound_with_endpoints(double k, double a, double b, double wa, double wb) {
    return std::max(signed_secant_bound(k, a, b, wa, wb),
                    signed_secant_bound(k, a, b, -wa, -wb));
}

struct Node {
    double a = 0.0, b = 0.0;
    double wa = 0.0, wb = 0.0; // omega at the endpoints
    double ub = 0.0;
};

struct NodeOrder {
    bool operator()(const Node& x, const Node& y) const {
        if (x.ub != y.ub) return x.ub < y.ub;
        const double wx = x.b - x.a, wy = y.b - y.a;
        if (wx != wy) return wx < wy; // wider interval first on ties
        return x.a > y.a;
    }
};

} // namespace

DcSplit make_dc_split(const AnalyticTrajectory& traj) {
    DcSplit split;
    split.traj = traj;
    split.curvature = curvature_bounds(traj);
    return split;
}

double interval_upper_bound(const DcSplit& split, int bus, double a, double b) {
    if (!(a >= 0.0 && b > a)) throw ValidationError("interval upper bound needs 0 <= a < b");
    return bound_with_endpoints(split.curvature[bus], a, b, split.omega(bus, a),
                                split.omega(bus, b));
}

BusMaximum global_max_abs(const DcSplit& split, int bus, const BnbOptions& opts) {
    if (!(opts.epsilon > 0.0)) throw ValidationError("branch-and-bound tolerance must be positive");
    const double horizon = split.traj.horizon;
    const double k = split.curvature[bus];

    BusMaximum result;
    const double w0 = split.omega(bus, 0.0);
    const double w1 = split.omega(bus, horizon);
    result.value = std::abs(w0);
    result.argmax = 0.0;
    if (std::abs(w1) > result.value) {
        result.value = std::abs(w1);
        result.argmax = horizon;
    }

    auto make_node = [&](double a, double b, double wa, double wb) {
        Node node{a, b, wa, wb, bound_with_endpoints(k, a, b, wa, wb)};
        if (opts.node_audit) opts.node_audit(bus, a, b, node.ub);
        return node;
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
    queue.push(make_node(0.0, horizon, w0, w1));

    while (!queue.empty()) {
        if (result.nodes >= opts.max_nodes) {
            result.capped = true;
            result.gap = std::max(0.0, queue.top().ub - result.value);
            break;
        }
        const Node node = queue.top();
        queue.pop();
        ++result.nodes;
        if (node.ub <= result.value + opts.epsilon) {
            // Best-first order: every remaining bound is no larger.
            result.gap = std::max(0.0, node.ub - result.value);
            break;
        }

        const double mid = 0.5 * (node.a + node.b);
        const double wm = split.omega(bus, mid);
        if (std::abs(wm) > result.value) {
            result.value = std::abs(wm);
            result.argmax = mid;
        }
        for (const Node& child :
             {make_node(node.a, mid, node.wa, wm), make_node(mid, node.b, wm, node.wb)}) {
            if (child.ub > result.value + opts.epsilon) queue.push(child);
        }
    }
    return result;
}

NadirResult nadir_F(const NetworkModel& model, const GainVector& gains,
                    const NadirOptions& opts) {
    SystemAnalysis analysis = analyze(model, gains, opts.horizon, opts.spectral);
    const DcSplit split = make_dc_split(analysis.traj);

    NadirResult result;
    BnbOptions bnb;
    bnb.epsilon = opts.epsilon;
    bnb.max_nodes = opts.max_nodes;
    for (int l = 0; l < model.bus_count; ++l) {
        BusMaximum bm = global_max_abs(split, l, bnb);
        if (l == 0 || bm.value > result.value) {
            result.value = bm.value;
            result.argmax_bus = l;
            result.argmax_time = bm.argmax;
        }
        result.per_bus.push_back(bm);
    }
    return result;
}

} // namespace gridfreq
