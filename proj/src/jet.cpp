#include "hessric/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hessric {

namespace {

std::uint32_t pack(const std::array<std::uint8_t, kMaxJetVars>& e) {
    std::uint32_t key = 0;
    for (int v = 0; v < kMaxJetVars; ++v) {
        key |= static_cast<std::uint32_t>(e[static_cast<std::size_t>(v)]) << (4 * v);
    }
    return key;
}

double binomial(int n, int k) {
    static const auto table = [] {
        std::array<std::array<double, 2 * kMaxJetOrder + 1>, 2 * kMaxJetOrder + 1> t{};
        for (int i = 0; i <= 2 * kMaxJetOrder; ++i) {
            t[static_cast<std::size_t>(i)][0] = 1.0;
            for (int j = 1; j <= i; ++j) {
                t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                    (j <= i - 1 ? t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0.0);
            }
        }
        return t;
    }();
    return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void enumerate_degree(int num_vars, int var, int remaining,
                      std::array<std::uint8_t, kMaxJetVars>& current,
                      std::vector<std::array<std::uint8_t, kMaxJetVars>>& out) {
    if (var == num_vars - 1) {
        current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(remaining);
        out.push_back(current);
        current[static_cast<std::size_t>(var)] = 0;
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
        enumerate_degree(num_vars, var + 1, remaining - e, current, out);
    }
    current[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

void JetLayout::build(int num_vars, int order) {
    num_vars_ = num_vars;
    order_ = order;

    std::array<std::uint8_t, kMaxJetVars> current{};
    for (int d = 0; d <= order; ++d) {
        enumerate_degree(num_vars, 0, d, current, exponents_);
    }
    degree_.reserve(exponents_.size());
    for (const auto& e : exponents_) {
        int d = 0;
        for (int v = 0; v < num_vars; ++v) d += e[static_cast<std::size_t>(v)];
        degree_.push_back(d);
    }

    std::vector<std::pair<std::uint32_t, int>> keyed;
    keyed.reserve(exponents_.size());
    for (int s = 0; s < size(); ++s) keyed.emplace_back(pack(exponents_[static_cast<std::size_t>(s)]), s);
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [key, s] : keyed) {
        packed_.push_back(key);
        packed_slot_.push_back(s);
    }

    std::vector<std::vector<ProductTerm>> groups(exponents_.size());
    for (int i = 0; i < size(); ++i) {
        for (int j = 0; j < size(); ++j) {
            if (degree_[static_cast<std::size_t>(i)] + degree_[static_cast<std::size_t>(j)] > order) continue;
            std::array<std::uint8_t, kMaxJetVars> sum{};
            double scale = 1.0;
            for (int v = 0; v < num_vars; ++v) {
                sum[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(
                    exponents_[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] +
                    exponents_[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)]);
                scale *= binomial(sum[static_cast<std::size_t>(v)],
                                  exponents_[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)]);
            }
            auto it = std::lower_bound(packed_.begin(), packed_.end(), pack(sum));
            int target = packed_slot_[static_cast<std::size_t>(it - packed_.begin())];
            groups[static_cast<std::size_t>(target)].push_back({i, j, scale});
        }
    }
    term_offsets_.push_back(0);
    for (auto& g : groups) {
        terms_.insert(terms_.end(), g.begin(), g.end());
        term_offsets_.push_back(terms_.size());
    }
}

namespace {

struct LayoutTable {
    JetLayout layouts[kMaxJetVars][kMaxJetOrder + 1];
};

}  // namespace

struct LayoutRegistry {
    LayoutTable table;
    LayoutRegistry() {
        for (int nv = 1; nv <= kMaxJetVars; ++nv) {
            for (int ord = 0; ord <= kMaxJetOrder; ++ord) {
                table.layouts[nv - 1][ord].build(nv, ord);
            }
        }
    }
};

const JetLayout& JetLayout::get(int num_vars, int order) {
    if (num_vars < 1 || num_vars > kMaxJetVars) {
        throw std::invalid_argument("jet num_vars must be in [1, " + std::to_string(kMaxJetVars) + "]");
    }
    if (order < 0 || order > kMaxJetOrder) {
        throw std::invalid_argument("jet order must be in [0, " + std::to_string(kMaxJetOrder) + "]");
    }
    static const LayoutRegistry registry;
    return registry.table.layouts[num_vars - 1][order];
}

int JetLayout::slot(std::span<const int> multi_index) const {
    std::array<std::uint8_t, kMaxJetVars> e{};
    int total = 0;
    for (std::size_t v = 0; v < multi_index.size(); ++v) {
        if (multi_index[v] < 0) throw std::invalid_argument("negative exponent in multi-index");
        e[v] = static_cast<std::uint8_t>(multi_index[v]);
        total += multi_index[v];
    }
    if (static_cast<int>(multi_index.size()) != num_vars_) {
        throw std::invalid_argument("multi-index length does not match num_vars");
    }
    if (total > order_) return -1;
    auto it = std::lower_bound(packed_.begin(), packed_.end(), pack(e));
    return packed_slot_[static_cast<std::size_t>(it - packed_.begin())];
}

Jet Jet::constant(double value, int num_vars, int order) {
    Jet j(&JetLayout::get(num_vars, order));
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(int index, double value, int num_vars, int order) {
    if (order < 1) throw std::invalid_argument("coordinate jet needs order >= 1");
    if (index < 0 || index >= num_vars) throw std::invalid_argument("variable index out of range");
    Jet j(&JetLayout::get(num_vars, order));
    j.c_[0] = value;
    j.c_[static_cast<std::size_t>(1 + index)] = 1.0;
    return j;
}

Jet Jet::constant_like(const Jet& shape, double value) {
    Jet j(shape.layout_);
    j.c_[0] = value;
    return j;
}

double Jet::coeff(std::span<const int> multi_index) const {
    int s = layout_->slot(multi_index);
    if (s < 0) throw std::invalid_argument("multi-index degree exceeds jet order");
    return c_[static_cast<std::size_t>(s)];
}

double Jet::partial(int i) const {
    if (order() < 1 || i < 0 || i >= num_vars()) throw std::invalid_argument("bad first-partial request");
    return c_[static_cast<std::size_t>(1 + i)];
}

double Jet::partial2(int i, int j) const {
    std::array<int, kMaxJetVars> mi{};
    mi[static_cast<std::size_t>(i)] += 1;
    mi[static_cast<std::size_t>(j)] += 1;
    return coeff(std::span<const int>(mi.data(), static_cast<std::size_t>(num_vars())));
}

double Jet::partial3(int i, int j, int k) const {
    std::array<int, kMaxJetVars> mi{};
    mi[static_cast<std::size_t>(i)] += 1;
    mi[static_cast<std::size_t>(j)] += 1;
    mi[static_cast<std::size_t>(k)] += 1;
    return coeff(std::span<const int>(mi.data(), static_cast<std::size_t>(num_vars())));
}

Jet Jet::partial_jet(int i) const {
    if (order() < 1) throw std::invalid_argument("cannot differentiate an order-0 jet");
    if (i < 0 || i >= num_vars()) throw std::invalid_argument("variable index out of range");
    const JetLayout& lower = JetLayout::get(num_vars(), order() - 1);
    Jet out(&lower);
    for (int s = 0; s < lower.size(); ++s) {
        std::array<int, kMaxJetVars> mi{};
        for (int v = 0; v < num_vars(); ++v) mi[static_cast<std::size_t>(v)] = lower.exponents(s)[static_cast<std::size_t>(v)];
        mi[static_cast<std::size_t>(i)] += 1;
        int src = layout_->slot(std::span<const int>(mi.data(), static_cast<std::size_t>(num_vars())));
        out.c_[static_cast<std::size_t>(s)] = c_[static_cast<std::size_t>(src)];
    }
    return out;
}

Jet Jet::truncated(int new_order) const {
    if (new_order > order() || new_order < 0) throw std::invalid_argument("bad truncation order");
    const JetLayout& lower = JetLayout::get(num_vars(), new_order);
    Jet out(&lower);
    std::copy(c_.begin(), c_.begin() + lower.size(), out.c_.begin());
    return out;
}

void Jet::require_same_shape(const Jet& a, const Jet& b) {
    if (a.layout_ != b.layout_) throw std::invalid_argument("jet shape mismatch (num_vars/order differ)");
}

Jet Jet::operator-() const {
    Jet out(layout_);
    for (std::size_t s = 0; s < c_.size(); ++s) out.c_[s] = -c_[s];
    return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t s = 0; s < c_.size(); ++s) c_[s] += rhs.c_[s];
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t s = 0; s < c_.size(); ++s) c_[s] -= rhs.c_[s];
    return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet out = a;
    out += b;
    return out;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet out = a;
    out -= b;
    return out;
}

Jet operator*(const Jet& a, const Jet& b) {
    Jet::require_same_shape(a, b);
    Jet out(a.layout_);
    const JetLayout& layout = *a.layout_;
    for (int t = 0; t < layout.size(); ++t) {
        double acc = 0.0;
        for (const auto& term : layout.product_terms(t)) {
            acc += term.scale * a.c_[static_cast<std::size_t>(term.lhs)] * b.c_[static_cast<std::size_t>(term.rhs)];
        }
        out.c_[static_cast<std::size_t>(t)] = acc;
    }
    return out;
}

// Solves h * b = a slot by slot in graded order: once all lower-degree
// coefficients of h are known, the only unknown in the Leibniz expansion of
// slot t is h[t] * b[0].
Jet operator/(const Jet& a, const Jet& b) {
    Jet::require_same_shape(a, b);
    if (b.c_[0] == 0.0) throw std::domain_error("division by a jet with zero value");
    Jet h(a.layout_);
    const JetLayout& layout = *a.layout_;
    for (int t = 0; t < layout.size(); ++t) {
        double acc = a.c_[static_cast<std::size_t>(t)];
        for (const auto& term : layout.product_terms(t)) {
            if (term.rhs == 0) continue;
            acc -= term.scale * h.c_[static_cast<std::size_t>(term.lhs)] * b.c_[static_cast<std::size_t>(term.rhs)];
        }
        h.c_[static_cast<std::size_t>(t)] = acc / b.c_[0];
    }
    return h;
}

Jet operator+(const Jet& a, double s) {
    Jet out = a;
    out.c_[0] += s;
    return out;
}
Jet operator+(double s, const Jet& a) { return a + s; }

Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) {
    Jet out = -a;
    out.c_[0] += s;
    return out;
}

Jet operator*(const Jet& a, double s) {
    Jet out = a;
    for (auto& c : out.c_) c *= s;
    return out;
}
Jet operator*(double s, const Jet& a) { return a * s; }

Jet operator/(const Jet& a, double s) {
    Jet out = a;
    for (auto& c : out.c_) c /= s;
    return out;
}
Jet operator/(double s, const Jet& a) { return Jet::constant_like(a, s) / a; }

bool operator==(const Jet& a, const Jet& b) {
    return a.layout_ == b.layout_ && a.c_ == b.c_;
}

Jet compose_univariate(const Jet& u, std::span<const double> derivs) {
    const int k = u.order();
    if (static_cast<int>(derivs.size()) < k + 1) {
        throw std::invalid_argument("composition needs order+1 derivative values");
    }
    Jet w = u - u.value();   // zero constant term, so truncated Horner is exact
    Jet r = Jet::constant_like(u, derivs[static_cast<std::size_t>(k)] / factorial(k));
    for (int m = k - 1; m >= 0; --m) {
        r = r * w + derivs[static_cast<std::size_t>(m)] / factorial(m);
    }
    return r;
}

namespace {

Jet compose_with(const Jet& a, double (*d)(double, int)) {
    std::array<double, kMaxJetOrder + 1> derivs{};
    for (int m = 0; m <= a.order(); ++m) derivs[static_cast<std::size_t>(m)] = d(a.value(), m);
    return compose_univariate(a, std::span<const double>(derivs.data(), static_cast<std::size_t>(a.order() + 1)));
}

}  // namespace

Jet exp(const Jet& a) {
    return compose_with(a, [](double x, int) { return std::exp(x); });
}

Jet log(const Jet& a) {
    if (a.value() <= 0.0) throw std::domain_error("log of a jet with non-positive value");
    return compose_with(a, [](double x, int m) {
        if (m == 0) return std::log(x);
        double c = factorial(m - 1) * std::pow(x, -m);
        return (m % 2 == 0) ? -c : c;
    });
}

Jet sin(const Jet& a) {
    return compose_with(a, [](double x, int m) {
        switch (m % 4) {
            case 0: return std::sin(x);
            case 1: return std::cos(x);
            case 2: return -std::sin(x);
            default: return -std::cos(x);
        }
    });
}

Jet cos(const Jet& a) {
    return compose_with(a, [](double x, int m) {
        switch (m % 4) {
            case 0: return std::cos(x);
            case 1: return -std::sin(x);
            case 2: return -std::cos(x);
            default: return std::sin(x);
        }
    });
}

Jet sinh(const Jet& a) {
    return compose_with(a, [](double x, int m) { return m % 2 == 0 ? std::sinh(x) : std::cosh(x); });
}

Jet cosh(const Jet& a) {
    return compose_with(a, [](double x, int m) { return m % 2 == 0 ? std::cosh(x) : std::sinh(x); });
}

Jet pow(const Jet& a, double exponent) {
    if (a.value() <= 0.0) throw std::domain_error("pow of a jet with non-positive value");
    std::array<double, kMaxJetOrder + 1> derivs{};
    for (int m = 0; m <= a.order(); ++m) {
        double factor = 1.0;
        for (int i = 0; i < m; ++i) factor *= exponent - i;
        derivs[static_cast<std::size_t>(m)] = factor * std::pow(a.value(), exponent - m);
    }
    return compose_univariate(a, std::span<const double>(derivs.data(), static_cast<std::size_t>(a.order() + 1)));
}

Jet sqrt(const Jet& a) {
    if (a.value() <= 0.0) throw std::domain_error("sqrt of a jet with non-positive value");
    return pow(a, 0.5);
}

}  // namespace hessric
