#include "ratrec/monomial.hpp"

#include <algorithm>
#include <cassert>

#include "ratrec/errors.hpp"

namespace ratrec {

Monomial Monomial::variable(std::uint32_t var, std::uint32_t exp) {
    Monomial m;
    if (exp > 0) {
        m.exps_.emplace_back(var, exp);
        m.degree_ = exp;
    }
    return m;
}

Monomial Monomial::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    Monomial m;
    for (const auto& [var, exp] : entries) {
        if (exp == 0) continue;
        if (!m.exps_.empty() && m.exps_.back().first == var)
            m.exps_.back().second += exp;
        else
            m.exps_.emplace_back(var, exp);
        m.degree_ += exp;
    }
    return m;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
    auto it = std::lower_bound(exps_.begin(), exps_.end(), var,
                               [](const Entry& e, std::uint32_t v) { return e.first < v; });
    return (it != exps_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.exps_.reserve(exps_.size() + o.exps_.size());
    std::size_t i = 0, j = 0;
    while (i < exps_.size() || j < o.exps_.size()) {
        if (j == o.exps_.size() || (i < exps_.size() && exps_[i].first < o.exps_[j].first))
            r.exps_.push_back(exps_[i++]);
        else if (i == exps_.size() || o.exps_[j].first < exps_[i].first)
            r.exps_.push_back(o.exps_[j++]);
        else {
            r.exps_.emplace_back(exps_[i].first, exps_[i].second + o.exps_[j].second);
            ++i, ++j;
        }
    }
    r.degree_ = degree_ + o.degree_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    std::size_t j = 0;
    for (const auto& [var, exp] : exps_) {
        while (j < o.exps_.size() && o.exps_[j].first < var) ++j;
        if (j == o.exps_.size() || o.exps_[j].first != var || o.exps_[j].second < exp)
            return false;
    }
    return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    assert(o.divides(*this));
    Monomial r;
    std::size_t j = 0;
    for (const auto& [var, exp] : exps_) {
        std::uint32_t sub = 0;
        while (j < o.exps_.size() && o.exps_[j].first < var) ++j;
        if (j < o.exps_.size() && o.exps_[j].first == var) sub = o.exps_[j].second;
        if (exp > sub) {
            r.exps_.emplace_back(var, exp - sub);
            r.degree_ += exp - sub;
        }
    }
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.exps_.size() || j < b.exps_.size()) {
        if (j == b.exps_.size() || (i < a.exps_.size() && a.exps_[i].first < b.exps_[j].first))
            r.exps_.push_back(a.exps_[i++]);
        else if (i == a.exps_.size() || b.exps_[j].first < a.exps_[i].first)
            r.exps_.push_back(b.exps_[j++]);
        else {
            r.exps_.emplace_back(a.exps_[i].first, std::max(a.exps_[i].second, b.exps_[j].second));
            ++i, ++j;
        }
    }
    for (const auto& e : r.exps_) r.degree_ += e.second;
    return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t j = 0;
    for (const auto& [var, exp] : a.exps_) {
        while (j < b.exps_.size() && b.exps_[j].first < var) ++j;
        if (j < b.exps_.size() && b.exps_[j].first == var) {
            r.exps_.emplace_back(var, std::min(exp, b.exps_[j].second));
            r.degree_ += r.exps_.back().second;
        }
    }
    return r;
}

bool Monomial::coprime_with(const Monomial& o) const {
    std::size_t j = 0;
    for (const auto& [var, exp] : exps_) {
        (void)exp;
        while (j < o.exps_.size() && o.exps_[j].first < var) ++j;
        if (j < o.exps_.size() && o.exps_[j].first == var) return false;
    }
    return true;
}

int cmp_grlex(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    // lex on ascending variable index: at the first differing variable the
    // larger exponent wins; an entry present beats one absent.
    const auto& ae = a.entries();
    const auto& be = b.entries();
    std::size_t i = 0, j = 0;
    while (i < ae.size() && j < be.size()) {
        if (ae[i].first != be[j].first)
            return ae[i].first < be[j].first ? 1 : -1;  // earlier variable present => larger
        if (ae[i].second != be[j].second) return ae[i].second < be[j].second ? -1 : 1;
        ++i, ++j;
    }
    if (i < ae.size()) return 1;
    if (j < be.size()) return -1;
    return 0;
}

namespace {

// (position, exponent) pairs ascending by position within a block
using Proj = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

int cmp_proj_lex(const Proj& a, const Proj& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first != b[j].first) return a[i].first < b[j].first ? 1 : -1;
        if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
        ++i, ++j;
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    return 0;
}

int cmp_proj_revlex_tail(const Proj& a, const Proj& b) {
    // scan from the highest position down; first difference: the monomial
    // with the smaller exponent there is the larger one
    std::size_t i = a.size(), j = b.size();
    while (i > 0 && j > 0) {
        const auto& ea = a[i - 1];
        const auto& eb = b[j - 1];
        if (ea.first != eb.first) {
            // the one carrying the later variable has a positive exponent
            // there while the other has zero => it is smaller
            return ea.first > eb.first ? -1 : 1;
        }
        if (ea.second != eb.second) return ea.second > eb.second ? -1 : 1;
        --i, --j;
    }
    if (i > 0) return -1;  // a has extra trailing support => smaller
    if (j > 0) return 1;
    return 0;
}

std::uint64_t proj_degree(const Proj& p) {
    std::uint64_t d = 0;
    for (const auto& e : p) d += e.second;
    return d;
}

int cmp_proj(const Proj& a, const Proj& b, OrderKind kind) {
    switch (kind) {
        case OrderKind::lex:
            return cmp_proj_lex(a, b);
        case OrderKind::graded_lex: {
            auto da = proj_degree(a), db = proj_degree(b);
            if (da != db) return da < db ? -1 : 1;
            return cmp_proj_lex(a, b);
        }
        case OrderKind::graded_revlex: {
            auto da = proj_degree(a), db = proj_degree(b);
            if (da != db) return da < db ? -1 : 1;
            return cmp_proj_revlex_tail(a, b);
        }
    }
    return 0;
}

}  // namespace

MonomialOrder MonomialOrder::graded_lex(std::uint32_t nvars) {
    Block b;
    for (std::uint32_t v = 0; v < nvars; ++v) b.vars.push_back(v);
    b.inner = OrderKind::graded_lex;
    return blocks({std::move(b)});
}

MonomialOrder MonomialOrder::graded_revlex(std::uint32_t nvars) {
    Block b;
    for (std::uint32_t v = 0; v < nvars; ++v) b.vars.push_back(v);
    b.inner = OrderKind::graded_revlex;
    return blocks({std::move(b)});
}

MonomialOrder MonomialOrder::lex(std::uint32_t nvars) {
    Block b;
    for (std::uint32_t v = 0; v < nvars; ++v) b.vars.push_back(v);
    b.inner = OrderKind::lex;
    return blocks({std::move(b)});
}

MonomialOrder MonomialOrder::blocks(std::vector<Block> blocks) {
    MonomialOrder o;
    o.blocks_ = std::move(blocks);
    o.build_lookup_();
    return o;
}

void MonomialOrder::build_lookup_() {
    std::uint32_t maxv = 0;
    for (const auto& b : blocks_)
        for (auto v : b.vars) maxv = std::max(maxv, v + 1);
    where_.assign(maxv, {UINT32_MAX, 0});
    for (std::uint32_t bi = 0; bi < blocks_.size(); ++bi)
        for (std::uint32_t pos = 0; pos < blocks_[bi].vars.size(); ++pos) {
            auto v = blocks_[bi].vars[pos];
            if (where_[v].first != UINT32_MAX) throw Error("variable in two order blocks");
            where_[v] = {bi, pos};
        }
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    // project both monomials onto each block, then compare blockwise
    std::vector<Proj> pa(blocks_.size()), pb(blocks_.size());
    for (const auto& [var, exp] : a.entries()) {
        if (var >= where_.size() || where_[var].first == UINT32_MAX)
            throw Error("monomial variable outside order");
        pa[where_[var].first].emplace_back(where_[var].second, exp);
    }
    for (const auto& [var, exp] : b.entries()) {
        if (var >= where_.size() || where_[var].first == UINT32_MAX)
            throw Error("monomial variable outside order");
        pb[where_[var].first].emplace_back(where_[var].second, exp);
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        std::sort(pa[i].begin(), pa[i].end());
        std::sort(pb[i].begin(), pb[i].end());
        int c = cmp_proj(pa[i], pb[i], blocks_[i].inner);
        if (c != 0) return c;
    }
    return 0;
}

}  // namespace ratrec
