#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tirl {

enum class DiscountFamily { exponential, hyperbolic, bounded_planning, table };

std::string_view to_string(DiscountFamily family);

/// A weight d(t) in [0, 1] on reward received t steps ahead, with d(0) = 1.
///
/// Tables are zero-extended past their last entry; solvers require the table
/// to cover the horizon they use. `shifted(n)` yields t -> d(t + n), which is
/// how offset objectives such as h(t + n) are formed.
class Discount {
public:
    static Discount exponential(double gamma);
    static Discount hyperbolic(double k);
    static Discount bounded_planning(std::size_t n);
    static Discount table(std::vector<double> values);

    /// Parses "exponential:0.9", "hyperbolic:1", "bounded_planning:2",
    /// "table:1,0.5,0.25". Throws parameter_out_of_range.
    static Discount parse(std::string_view text);

    double operator()(std::size_t t) const;

    /// d shifted by n: t -> d(t + n). The shifted function no longer
    /// satisfies d(0) = 1 and is meant for objective evaluation only.
    Discount shifted(std::size_t n) const;

    DiscountFamily family() const noexcept { return family_; }
    /// gamma, k or n depending on the family (unused for tables).
    double parameter() const noexcept { return parameter_; }
    const std::vector<double>& table_values() const noexcept { return table_; }
    std::size_t shift() const noexcept { return shift_; }

    /// Number of explicit weights for tables, none for closed forms.
    std::optional<std::size_t> coverage() const;

    /// Canonical textual form accepted by parse() (shift is not encoded).
    std::string to_spec() const;

private:
    Discount(DiscountFamily family, double parameter, std::vector<double> table)
        : family_(family), parameter_(parameter), table_(std::move(table)) {}

    DiscountFamily family_;
    double parameter_ = 0.0;
    std::vector<double> table_;
    std::size_t shift_ = 0;
};

/// Throws parameter_out_of_range when a table discount does not cover
/// weights d(0..horizon-1).
void require_covers(const Discount& d, std::size_t horizon);

struct PreferenceReversal {
    std::vector<double> x;  ///< preferred-against sequence at shift 0 ...
    std::vector<double> y;  ///< ... versus this one (all zeros)
    std::size_t shift = 1;
    double value_at_zero = 0.0;   ///< sum d(t) (x_t - y_t), strictly negative
    double value_at_shift = 0.0;  ///< sum d(t + shift) (x_t - y_t), strictly positive
};

struct ConsistencyReport {
    bool consistent = false;
    std::optional<double> gamma;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::optional<PreferenceReversal> reversal;
};

/// Decides whether d restricted to weights d(0..horizon-1) is geometric, i.e.
/// d(t+1) d(s) = d(s+1) d(t) for all s, t <= horizon - 2 (relative tolerance
/// 1e-9). When it is not, builds a two-point reward sequence pair whose
/// preference flips between shift 0 and shift 1.
ConsistencyReport is_temporally_consistent(const Discount& d, std::size_t horizon);

}  // namespace tirl
