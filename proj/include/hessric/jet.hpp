#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace hessric {

inline constexpr int kMaxJetVars = 6;
inline constexpr int kMaxJetOrder = 4;

/// Coefficient layout shared by all jets with the same (num_vars, order).
///
/// Slots enumerate multi-indices by total degree, and within a degree by a
/// fixed order that puts weight on low variable indices first.  The degree-1
/// block therefore occupies slots 1..num_vars in variable order, and the
/// slots of a lower-order layout are a prefix of any higher-order layout
/// with the same num_vars (truncation is a prefix copy).
class JetLayout {
public:
    struct ProductTerm {
        std::int32_t lhs;
        std::int32_t rhs;
        double scale;   // product of per-variable binomial coefficients
    };

    static const JetLayout& get(int num_vars, int order);

    int num_vars() const { return num_vars_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(exponents_.size()); }

    const std::array<std::uint8_t, kMaxJetVars>& exponents(int slot) const {
        return exponents_[static_cast<std::size_t>(slot)];
    }
    int degree(int slot) const { return degree_[static_cast<std::size_t>(slot)]; }

    // Slot of the given multi-index, or -1 if its total degree exceeds order.
    int slot(std::span<const int> multi_index) const;

    // Leibniz expansion of the target slot: all ordered pairs (lhs, rhs)
    // with exponents(lhs) + exponents(rhs) == exponents(target).
    std::span<const ProductTerm> product_terms(int target_slot) const {
        auto lo = term_offsets_[static_cast<std::size_t>(target_slot)];
        auto hi = term_offsets_[static_cast<std::size_t>(target_slot) + 1];
        return {terms_.data() + lo, terms_.data() + hi};
    }

private:
    friend struct LayoutRegistry;
    void build(int num_vars, int order);

    int num_vars_ = 0;
    int order_ = 0;
    std::vector<std::array<std::uint8_t, kMaxJetVars>> exponents_;
    std::vector<int> degree_;
    std::vector<ProductTerm> terms_;
    std::vector<std::size_t> term_offsets_;
    std::vector<std::uint32_t> packed_;   // sorted packed keys for slot lookup
    std::vector<int> packed_slot_;
};

/// Truncated multivariate Taylor expansion of a scalar quantity.
///
/// Coefficients are raw partial derivatives (d^alpha f, not divided by
/// alpha!), stored densely in the layout's slot order.  Jets are immutable
/// values; every operation returns a fresh jet and never mutates operands.
class Jet {
public:
    static Jet constant(double value, int num_vars, int order);
    static Jet variable(int index, double value, int num_vars, int order);
    static Jet constant_like(const Jet& shape, double value);

    int num_vars() const { return layout_->num_vars(); }
    int order() const { return layout_->order(); }
    const JetLayout& layout() const { return *layout_; }

    double value() const { return c_[0]; }
    double coeff(int slot) const { return c_[static_cast<std::size_t>(slot)]; }
    double coeff(std::span<const int> multi_index) const;
    double partial(int i) const;
    double partial2(int i, int j) const;
    double partial3(int i, int j, int k) const;

    // Jet of d_i(this), one order lower.
    Jet partial_jet(int i) const;
    Jet truncated(int new_order) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    friend Jet operator+(const Jet& a, double s);
    friend Jet operator+(double s, const Jet& a);
    friend Jet operator-(const Jet& a, double s);
    friend Jet operator-(double s, const Jet& a);
    friend Jet operator*(const Jet& a, double s);
    friend Jet operator*(double s, const Jet& a);
    friend Jet operator/(const Jet& a, double s);
    friend Jet operator/(double s, const Jet& a);

    friend bool operator==(const Jet& a, const Jet& b);

    // Composition with a univariate function given its derivative list
    // derivs[m] = phi^(m)(value()), m = 0..order.
    friend Jet compose_univariate(const Jet& u, std::span<const double> derivs);

    friend Jet exp(const Jet& a);
    friend Jet log(const Jet& a);
    friend Jet sin(const Jet& a);
    friend Jet cos(const Jet& a);
    friend Jet sinh(const Jet& a);
    friend Jet cosh(const Jet& a);
    friend Jet sqrt(const Jet& a);
    friend Jet pow(const Jet& a, double exponent);

private:
    Jet(const JetLayout* layout, std::vector<double> coeffs)
        : layout_(layout), c_(std::move(coeffs)) {}
    explicit Jet(const JetLayout* layout)
        : layout_(layout), c_(static_cast<std::size_t>(layout->size()), 0.0) {}

    static void require_same_shape(const Jet& a, const Jet& b);

    const JetLayout* layout_;
    std::vector<double> c_;
};

}  // namespace hessric
