#pragma once

#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

#include "gapcert/jet.hpp"

namespace gapcert {

struct QuadResult {
    Interval value;
    int panels = 0;
    bool budget_exceeded = false;
};

struct QuadManyResult {
    std::vector<Interval> values;
    int panels = 0;
    bool budget_exceeded = false;
};

namespace detail {

// Integrals over [a,b] of an order-K Taylor expansion around the panel midpoint,
// with the top coefficient taken over the whole panel as remainder.
template <int K>
struct PanelMoments {
    std::array<Interval, K> low;
    Interval neg;
    Interval pos;
    double mid;

    PanelMoments(double a, double b) {
        mid = std::clamp(0.5 * a + 0.5 * b, a, b);
        Interval alpha = Interval(a) - Interval(mid);
        Interval beta = Interval(b) - Interval(mid);
        Interval pa = alpha, pb = beta;
        for (int k = 0; k < K; ++k) {
            low[k] = (pb - pa) / Interval(static_cast<double>(k + 1));
            pa = pa * alpha;
            pb = pb * beta;
        }
        neg = -pa / Interval(static_cast<double>(K + 1));
        pos = pb / Interval(static_cast<double>(K + 1));
    }

    Interval apply(const Jet<K>& at_mid, const Jet<K>& over_panel) const {
        Interval s = over_panel.c[K] * neg + over_panel.c[K] * pos;
        for (int k = 0; k < K; ++k) s = s + at_mid.c[k] * low[k];
        return s;
    }
};

}  // namespace detail

// Encloses the integrals of m integrands over [a,b]. The callable has signature
// void(const Jet<K>& u, std::vector<Jet<K>>& out) and fills out[0..m).
// Panels are bisected, worst first, until every component width is within its target.
// budget_exceeded reports a target left unmet by the panel budget or the rounding floor.
template <int K, class F>
QuadManyResult integrate_many(F&& f, double a, double b, std::size_t m, const std::vector<double>& targets,
                              int max_panels = 1 << 14, int initial_panels = 8) {
    struct Panel {
        double a, b;
        std::vector<Interval> v;
        double badness;
    };
    std::vector<Jet<K>> out_mid(m), out_all(m);
    auto eval = [&](double pa, double pb) {
        detail::PanelMoments<K> mom(pa, pb);
        f(Jet<K>::variable(Interval(mom.mid)), out_mid);
        f(Jet<K>::variable(Interval(pa, pb)), out_all);
        Panel p{pa, pb, std::vector<Interval>(m), 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            p.v[j] = mom.apply(out_mid[j], out_all[j]);
            p.badness = std::max(p.badness, p.v[j].width() / targets[j]);
        }
        return p;
    };

    QuadManyResult res;
    if (!(a < b)) {
        res.values.assign(m, Interval(0.0));
        return res;
    }
    std::vector<Panel> panels;
    std::vector<double> totals(m, 0.0);
    std::priority_queue<std::pair<double, std::size_t>> heap;
    auto add_panel = [&](Panel&& p) {
        for (std::size_t j = 0; j < m; ++j) totals[j] += p.v[j].width();
        heap.emplace(p.badness, panels.size());
        panels.push_back(std::move(p));
    };
    for (const Interval& piece : subdivide(Interval(a, b), initial_panels)) add_panel(eval(piece.lo, piece.hi));
    int live = initial_panels;

    // Running totals drift after wide early panels are removed, so they are
    // rebuilt from the live panels before being trusted.
    auto recompute = [&] {
        std::fill(totals.begin(), totals.end(), 0.0);
        for (const Panel& p : panels)
            if (p.badness >= 0.0)
                for (std::size_t j = 0; j < m; ++j) totals[j] += p.v[j].width();
    };
    int since_recompute = 0;
    auto done = [&] {
        if (!heap.empty() && heap.top().first * live < 1.0) return true;
        for (std::size_t j = 0; j < m; ++j)
            if (totals[j] > targets[j]) {
                if (since_recompute == 0) return false;
                recompute();
                since_recompute = 0;
                for (std::size_t k = 0; k < m; ++k)
                    if (totals[k] > targets[k]) return false;
                return true;
            }
        return true;
    };
    while (!done()) {
        ++since_recompute;
        if (live >= max_panels) {
            res.budget_exceeded = true;
            break;
        }
        auto [bad, idx] = heap.top();
        heap.pop();
        Panel& p = panels[idx];
        double pm = std::clamp(0.5 * p.a + 0.5 * p.b, p.a, p.b);
        if (pm <= p.a || pm >= p.b) {
            res.budget_exceeded = true;
            break;
        }
        for (std::size_t j = 0; j < m; ++j) totals[j] -= p.v[j].width();
        std::size_t worst = 0;
        for (std::size_t j = 1; j < m; ++j)
            if (p.v[j].width() / targets[j] > p.v[worst].width() / targets[worst]) worst = j;
        double parent_width = p.v[worst].width();
        double pa = p.a, pb = p.b;
        p.badness = -1.0;
        p.v.clear();
        Panel left = eval(pa, pm), right = eval(pm, pb);
        // Children that do not shrink the worst component sit at the rounding floor.
        if (left.v[worst].width() + right.v[worst].width() >= 0.9 * parent_width) {
            left.badness = 0.0;
            right.badness = 0.0;
        }
        add_panel(std::move(left));
        add_panel(std::move(right));
        ++live;
    }
    recompute();
    for (std::size_t j = 0; j < m; ++j)
        if (totals[j] > targets[j]) res.budget_exceeded = true;

    std::vector<const Panel*> order;
    for (const Panel& p : panels)
        if (p.badness >= 0.0) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const Panel* x, const Panel* y) { return x->a < y->a; });
    res.values.assign(m, Interval(0.0));
    for (const Panel* p : order)
        for (std::size_t j = 0; j < m; ++j) res.values[j] = res.values[j] + p->v[j];
    res.panels = static_cast<int>(order.size());
    return res;
}

// Composite Taylor rule for one integrand; K = 2 is the midpoint rule with the
// f'' remainder |J|^3/24 sup|f''|.
template <int K = 2, class F>
QuadResult integrate_verified(F&& f, const Interval& domain, double target_width, int max_panels = 1 << 14) {
    auto g = [&](const Jet<K>& u, std::vector<Jet<K>>& out) { out[0] = f(u); };
    QuadManyResult r = integrate_many<K>(g, domain.lo, domain.hi, 1, {target_width}, max_panels, 1);
    return QuadResult{r.values[0], r.panels, r.budget_exceeded};
}

}  // namespace gapcert
