#include "skg/bayes/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "skg/bayes/factor.hpp"
#include "skg/error.hpp"

namespace skg::bayes {
namespace {

std::vector<std::size_t> resolve_query(const BayesianNetwork& bn, const std::vector<std::string>& query) {
    std::vector<std::size_t> out;
    for (const auto& id : query) {
        const std::size_t i = bn.require(id);
        if (std::find(out.begin(), out.end(), i) != out.end()) {
            throw EvidenceError("node '" + id + "' appears twice in the query");
        }
        out.push_back(i);
    }
    return out;
}

JointDistribution make_distribution(const BayesianNetwork& bn, const std::vector<std::size_t>& query,
                                    std::vector<double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) throw ImpossibleEvidence("evidence has probability zero under the network");
    JointDistribution out;
    for (std::size_t q : query) {
        out.variables.push_back(bn.node(q).id);
        out.states.push_back(bn.node(q).states);
    }
    for (double& w : weights) w /= total;
    out.probs = std::move(weights);
    return out;
}

// Evidence resolved to node indices.
struct ResolvedEvidence {
    std::vector<std::optional<std::size_t>> hard;   // per node
    std::vector<const std::vector<double>*> soft;   // per node
};

ResolvedEvidence resolve_evidence(const BayesianNetwork& bn, const Evidence& evidence) {
    check_evidence(bn, evidence);
    ResolvedEvidence out{std::vector<std::optional<std::size_t>>(bn.size()),
                         std::vector<const std::vector<double>*>(bn.size(), nullptr)};
    for (const auto& [id, label] : evidence.hard) {
        const std::size_t i = bn.require(id);
        out.hard[i] = bn.state_index(i, label);
    }
    for (const auto& [id, weights] : evidence.likelihood) out.soft[bn.require(id)] = &weights;
    return out;
}

// Factors and elimination order for one VE query.
struct Plan {
    std::vector<Factor> factors;
    std::vector<std::size_t> order;
};

Plan make_plan(const BayesianNetwork& bn, const ResolvedEvidence& ev, const std::vector<std::size_t>& query) {
    const std::size_t n = bn.size();
    std::vector<bool> is_query(n, false);
    for (std::size_t q : query) is_query[q] = true;

    // Only ancestors of query and evidence nodes matter; the rest sum to one.
    std::vector<bool> relevant(n, false);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_query[i] || ev.hard[i] || ev.soft[i]) stack.push_back(i);
    }
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        if (relevant[i]) continue;
        relevant[i] = true;
        for (std::size_t p : bn.parent_indices(i)) stack.push_back(p);
    }

    Plan plan;
    for (std::size_t i = 0; i < n; ++i) {
        if (!relevant[i]) continue;
        Factor f;
        for (std::size_t p : bn.parent_indices(i)) {
            f.scope.push_back(p);
            f.cards.push_back(bn.cardinality(p));
        }
        f.scope.push_back(i);
        f.cards.push_back(bn.cardinality(i));
        f.table = bn.node(i).cpt;
        plan.factors.push_back(std::move(f));
        if (ev.soft[i]) plan.factors.push_back(Factor{{i}, {bn.cardinality(i)}, *ev.soft[i]});
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!relevant[i] || !ev.hard[i]) continue;
        if (is_query[i]) {
            std::vector<double> indicator(bn.cardinality(i), 0.0);
            indicator[*ev.hard[i]] = 1.0;
            plan.factors.push_back(Factor{{i}, {bn.cardinality(i)}, std::move(indicator)});
        } else {
            for (auto& f : plan.factors) f = restrict_to(f, i, *ev.hard[i]);
        }
    }

    // Interaction graph over the variables still present.
    std::map<std::size_t, std::set<std::size_t>> adjacency;
    for (const auto& f : plan.factors) {
        for (std::size_t a : f.scope) {
            auto& row = adjacency[a];
            for (std::size_t b : f.scope) {
                if (a != b) row.insert(b);
            }
        }
    }
    std::set<std::size_t> pending;
    for (const auto& [v, nbrs] : adjacency) {
        if (!is_query[v]) pending.insert(v);
    }
    while (!pending.empty()) {
        std::size_t best = *pending.begin();
        for (std::size_t v : pending) {
            const std::size_t dv = adjacency[v].size();
            const std::size_t db = adjacency[best].size();
            if (dv < db || (dv == db && bn.node(v).id < bn.node(best).id)) best = v;
        }
        const auto nbrs = adjacency[best];
        for (std::size_t a : nbrs) {
            adjacency[a].erase(best);
            for (std::size_t b : nbrs) {
                if (a != b) adjacency[a].insert(b);
            }
        }
        adjacency.erase(best);
        pending.erase(best);
        plan.order.push_back(best);
    }
    return plan;
}

}  // namespace

void check_evidence(const BayesianNetwork& bn, const Evidence& evidence) {
    for (const auto& [id, label] : evidence.hard) {
        const std::size_t i = bn.require(id);
        if (!bn.state_index(i, label)) {
            throw EvidenceError("node '" + id + "' has no state '" + label + "'");
        }
    }
    for (const auto& [id, weights] : evidence.likelihood) {
        const std::size_t i = bn.require(id);
        if (evidence.hard.count(id)) {
            throw EvidenceError("node '" + id + "' has both hard and virtual evidence");
        }
        if (weights.size() != bn.cardinality(i)) {
            throw EvidenceError("likelihood for '" + id + "' has " + std::to_string(weights.size()) +
                                " entries, node has " + std::to_string(bn.cardinality(i)) + " states");
        }
        bool any = false;
        for (double w : weights) {
            if (!std::isfinite(w) || w < 0.0) {
                throw EvidenceError("likelihood for '" + id + "' has a negative or non-finite entry");
            }
            any |= w > 0.0;
        }
        if (!any) throw EvidenceError("likelihood for '" + id + "' is all zero");
    }
}

double JointDistribution::at(const std::vector<std::size_t>& state_indices) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < states.size(); ++k) flat = flat * states[k].size() + state_indices[k];
    return probs[flat];
}

std::vector<std::size_t> JointDistribution::unflatten(std::size_t flat) const {
    std::vector<std::size_t> out(states.size(), 0);
    for (std::size_t k = states.size(); k-- > 0;) {
        out[k] = flat % states[k].size();
        flat /= states[k].size();
    }
    return out;
}

std::vector<double> JointDistribution::marginal(std::size_t variable) const {
    std::vector<double> out(states[variable].size(), 0.0);
    for (std::size_t flat = 0; flat < probs.size(); ++flat) out[unflatten(flat)[variable]] += probs[flat];
    return out;
}

double joint_probability(const BayesianNetwork& bn, const std::vector<std::size_t>& assignment) {
    if (assignment.size() != bn.size()) {
        throw EvidenceError("assignment covers " + std::to_string(assignment.size()) + " of " +
                            std::to_string(bn.size()) + " nodes");
    }
    double p = 1.0;
    for (std::size_t i = 0; i < bn.size(); ++i) {
        if (assignment[i] >= bn.cardinality(i)) throw EvidenceError("state index out of range for '" + bn.node(i).id + "'");
        p *= bn.node(i).cpt[bn.row_offset(i, assignment) + assignment[i]];
        if (p == 0.0) return 0.0;
    }
    return p;
}

double joint_probability(const BayesianNetwork& bn, const std::map<std::string, std::string>& assignment) {
    std::vector<std::size_t> states(bn.size(), 0);
    std::vector<bool> seen(bn.size(), false);
    for (const auto& [id, label] : assignment) {
        const std::size_t i = bn.require(id);
        auto s = bn.state_index(i, label);
        if (!s) throw EvidenceError("node '" + id + "' has no state '" + label + "'");
        states[i] = *s;
        seen[i] = true;
    }
    for (std::size_t i = 0; i < bn.size(); ++i) {
        if (!seen[i]) throw EvidenceError("assignment is missing node '" + bn.node(i).id + "'");
    }
    return joint_probability(bn, states);
}

JointDistribution enumerate_posterior(const BayesianNetwork& bn, const Evidence& evidence,
                                      const std::vector<std::string>& query) {
    const ResolvedEvidence ev = resolve_evidence(bn, evidence);
    const auto q = resolve_query(bn, query);

    std::size_t space = 1;
    for (std::size_t i = 0; i < bn.size(); ++i) {
        space *= bn.cardinality(i);
        if (space > kEnumerationLimit) {
            throw GuardExceeded("state space exceeds the enumeration limit of 2^22");
        }
    }

    std::size_t qsize = 1;
    for (std::size_t v : q) qsize *= bn.cardinality(v);
    std::vector<double> weights(qsize, 0.0);

    std::vector<std::size_t> free;
    std::vector<std::size_t> assignment(bn.size(), 0);
    for (std::size_t i = 0; i < bn.size(); ++i) {
        if (ev.hard[i]) {
            assignment[i] = *ev.hard[i];
        } else {
            free.push_back(i);
        }
    }
    while (true) {
        double w = joint_probability(bn, assignment);
        for (std::size_t i = 0; i < bn.size() && w > 0.0; ++i) {
            if (ev.soft[i]) w *= (*ev.soft[i])[assignment[i]];
        }
        std::size_t flat = 0;
        for (std::size_t v : q) flat = flat * bn.cardinality(v) + assignment[v];
        weights[flat] += w;

        std::size_t k = free.size();
        while (k > 0) {
            const std::size_t v = free[k - 1];
            if (++assignment[v] < bn.cardinality(v)) break;
            assignment[v] = 0;
            --k;
        }
        if (k == 0) break;
    }
    return make_distribution(bn, q, std::move(weights));
}

JointDistribution ve_posterior(const BayesianNetwork& bn, const Evidence& evidence,
                               const std::vector<std::string>& query) {
    const ResolvedEvidence ev = resolve_evidence(bn, evidence);
    const auto q = resolve_query(bn, query);
    Plan plan = make_plan(bn, ev, q);

    std::vector<Factor> factors = std::move(plan.factors);
    for (std::size_t var : plan.order) {
        Factor product = Factor::constant(1.0);
        std::vector<Factor> rest;
        for (auto& f : factors) {
            if (f.contains(var)) {
                product = multiply(product, f);
            } else {
                rest.push_back(std::move(f));
            }
        }
        rest.push_back(sum_out(product, var));
        factors = std::move(rest);
    }
    Factor result = Factor::constant(1.0);
    for (const auto& f : factors) result = multiply(result, f);
    // Query nodes that never entered a factor cannot happen: every query node
    // is relevant and keeps its own CPT factor.
    result = reorder(result, q);
    return make_distribution(bn, q, std::move(result.table));
}

std::vector<std::string> elimination_order(const BayesianNetwork& bn, const Evidence& evidence,
                                           const std::vector<std::string>& query) {
    const ResolvedEvidence ev = resolve_evidence(bn, evidence);
    const Plan plan = make_plan(bn, ev, resolve_query(bn, query));
    std::vector<std::string> out;
    for (std::size_t v : plan.order) out.push_back(bn.node(v).id);
    return out;
}

std::vector<Explanation> top_assignments(const BayesianNetwork& bn, const Evidence& evidence,
                                         const std::vector<std::string>& over, std::size_t k) {
    if (over.size() > kMapWidthLimit) {
        throw GuardExceeded("MAP over " + std::to_string(over.size()) + " nodes exceeds the limit of " +
                            std::to_string(kMapWidthLimit));
    }
    std::size_t space = 1;
    for (const auto& id : over) {
        space *= bn.cardinality(bn.require(id));
        if (space > kEnumerationLimit) throw GuardExceeded("MAP state space exceeds 2^22");
    }
    const JointDistribution joint = ve_posterior(bn, evidence, over);

    std::vector<std::size_t> order(joint.probs.size());
    std::iota(order.begin(), order.end(), 0);
    // Flat index order is lexicographic order of state vectors, so a stable
    // sort keeps the tie rule.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return joint.probs[a] > joint.probs[b]; });
    order.resize(std::min(k, order.size()));

    std::vector<Explanation> out;
    for (std::size_t flat : order) {
        Explanation e;
        e.states = joint.unflatten(flat);
        for (std::size_t v = 0; v < over.size(); ++v) e.assignment[over[v]] = joint.states[v][e.states[v]];
        e.probability = joint.probs[flat];
        out.push_back(std::move(e));
    }
    return out;
}

Explanation map_assignment(const BayesianNetwork& bn, const Evidence& evidence, const std::vector<std::string>& over) {
    return top_assignments(bn, evidence, over, 1).front();
}

VirtualEvidence apply_virtual_evidence(const BayesianNetwork& bn, const std::string& node,
                                       const std::vector<double>& likelihood) {
    Evidence probe;
    probe.likelihood[node] = likelihood;
    check_evidence(bn, probe);

    const double peak = *std::max_element(likelihood.begin(), likelihood.end());
    Node aux;
    aux.id = "virtual:" + node;
    for (int suffix = 2; bn.index_of(aux.id); ++suffix) aux.id = "virtual:" + node + "#" + std::to_string(suffix);
    aux.role = NodeRole::Other;
    aux.states = {"off", "on"};
    aux.parents = {node};
    for (double w : likelihood) {
        const double on = w / peak;
        aux.cpt.push_back(1.0 - on);
        aux.cpt.push_back(on);
    }
    std::vector<Node> nodes = bn.nodes();
    nodes.push_back(std::move(aux));
    VirtualEvidence out{BayesianNetwork(std::move(nodes)), "", {}};
    out.aux_id = out.network.nodes().back().id;
    out.evidence.hard[out.aux_id] = "on";
    return out;
}

}  // namespace skg::bayes
