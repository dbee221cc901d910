#include "skg/bayes/factor.hpp"

#include <algorithm>

namespace skg::bayes {
namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& cards) {
    std::vector<std::size_t> strides(cards.size(), 1);
    for (std::size_t i = cards.size(); i-- > 1;) strides[i - 1] = strides[i] * cards[i];
    return strides;
}

std::size_t volume(const std::vector<std::size_t>& cards) {
    std::size_t n = 1;
    for (std::size_t c : cards) n *= c;
    return n;
}

// Stride of each `target` scope variable inside `source` (0 when absent).
std::vector<std::size_t> mapped_strides(const Factor& source, const std::vector<std::size_t>& target) {
    const auto strides = strides_of(source.cards);
    std::vector<std::size_t> out(target.size(), 0);
    for (std::size_t k = 0; k < target.size(); ++k) {
        const std::size_t pos = source.position(target[k]);
        if (pos != Factor::npos) out[k] = strides[pos];
    }
    return out;
}

}  // namespace

Factor Factor::constant(double value) { return Factor{{}, {}, {value}}; }

std::size_t Factor::position(std::size_t var) const {
    auto it = std::find(scope.begin(), scope.end(), var);
    return it == scope.end() ? npos : static_cast<std::size_t>(it - scope.begin());
}

bool Factor::contains(std::size_t var) const { return position(var) != npos; }

Factor multiply(const Factor& a, const Factor& b) {
    Factor out{a.scope, a.cards, {}};
    for (std::size_t i = 0; i < b.scope.size(); ++i) {
        if (!a.contains(b.scope[i])) {
            out.scope.push_back(b.scope[i]);
            out.cards.push_back(b.cards[i]);
        }
    }
    const std::size_t n = volume(out.cards);
    out.table.resize(n);
    const auto sa = mapped_strides(a, out.scope);
    const auto sb = mapped_strides(b, out.scope);
    std::vector<std::size_t> counter(out.scope.size(), 0);
    std::size_t ia = 0;
    std::size_t ib = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        out.table[idx] = a.table[ia] * b.table[ib];
        for (std::size_t k = out.scope.size(); k-- > 0;) {
            ++counter[k];
            ia += sa[k];
            ib += sb[k];
            if (counter[k] < out.cards[k]) break;
            ia -= sa[k] * out.cards[k];
            ib -= sb[k] * out.cards[k];
            counter[k] = 0;
        }
    }
    return out;
}

Factor sum_out(const Factor& f, std::size_t var) {
    const std::size_t pos = f.position(var);
    if (pos == Factor::npos) return f;
    Factor out;
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
        if (i == pos) continue;
        out.scope.push_back(f.scope[i]);
        out.cards.push_back(f.cards[i]);
    }
    out.table.assign(volume(out.cards), 0.0);
    const auto so = mapped_strides(out, f.scope);
    std::vector<std::size_t> counter(f.scope.size(), 0);
    std::size_t io = 0;
    for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
        out.table[io] += f.table[idx];
        for (std::size_t k = f.scope.size(); k-- > 0;) {
            ++counter[k];
            io += so[k];
            if (counter[k] < f.cards[k]) break;
            io -= so[k] * f.cards[k];
            counter[k] = 0;
        }
    }
    return out;
}

Factor restrict_to(const Factor& f, std::size_t var, std::size_t state) {
    const std::size_t pos = f.position(var);
    if (pos == Factor::npos) return f;
    Factor out;
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
        if (i == pos) continue;
        out.scope.push_back(f.scope[i]);
        out.cards.push_back(f.cards[i]);
    }
    out.table.resize(volume(out.cards));
    const auto sf = mapped_strides(f, out.scope);
    const std::size_t base = state * strides_of(f.cards)[pos];
    std::vector<std::size_t> counter(out.scope.size(), 0);
    std::size_t src = base;
    for (std::size_t idx = 0; idx < out.table.size(); ++idx) {
        out.table[idx] = f.table[src];
        for (std::size_t k = out.scope.size(); k-- > 0;) {
            ++counter[k];
            src += sf[k];
            if (counter[k] < out.cards[k]) break;
            src -= sf[k] * out.cards[k];
            counter[k] = 0;
        }
    }
    return out;
}

Factor reorder(const Factor& f, const std::vector<std::size_t>& order) {
    Factor out{order, {}, {}};
    for (std::size_t v : order) out.cards.push_back(f.cards[f.position(v)]);
    out.table.resize(f.table.size());
    const auto sf = mapped_strides(f, out.scope);
    std::vector<std::size_t> counter(out.scope.size(), 0);
    std::size_t src = 0;
    for (std::size_t idx = 0; idx < out.table.size(); ++idx) {
        out.table[idx] = f.table[src];
        for (std::size_t k = out.scope.size(); k-- > 0;) {
            ++counter[k];
            src += sf[k];
            if (counter[k] < out.cards[k]) break;
            src -= sf[k] * out.cards[k];
            counter[k] = 0;
        }
    }
    return out;
}

}  // namespace skg::bayes
