#include "tirl/discount.hpp"

#include <cmath>
#include <sstream>

#include "tirl/error.hpp"

namespace tirl {

std::string_view to_string(DiscountFamily family) {
    switch (family) {
        case DiscountFamily::exponential: return "exponential";
        case DiscountFamily::hyperbolic: return "hyperbolic";
        case DiscountFamily::bounded_planning: return "bounded_planning";
        case DiscountFamily::table: return "table";
    }
    return "unknown";
}

Discount Discount::exponential(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw Error(ErrorCode::parameter_out_of_range, "exponential discount needs gamma in (0, 1]");
    return Discount(DiscountFamily::exponential, gamma, {});
}

Discount Discount::hyperbolic(double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw Error(ErrorCode::parameter_out_of_range, "hyperbolic discount needs k in (0, inf)");
    return Discount(DiscountFamily::hyperbolic, k, {});
}

Discount Discount::bounded_planning(std::size_t n) {
    return Discount(DiscountFamily::bounded_planning, static_cast<double>(n), {});
}

Discount Discount::table(std::vector<double> values) {
    if (values.empty() || values.front() != 1.0)
        throw Error(ErrorCode::parameter_out_of_range, "table discount must start with d(0) = 1");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw Error(ErrorCode::parameter_out_of_range, "table discount weights must lie in [0, 1]");
    return Discount(DiscountFamily::table, 0.0, std::move(values));
}

Discount Discount::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorCode::parameter_out_of_range, "discount spec must look like family:parameters");
    const std::string family(text.substr(0, colon));
    const std::string rest(text.substr(colon + 1));
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty())
            throw Error(ErrorCode::parameter_out_of_range, "bad number '" + s + "' in discount spec");
        return v;
    };
    if (family == "exponential") return exponential(number(rest));
    if (family == "hyperbolic") return hyperbolic(number(rest));
    if (family == "bounded_planning") {
        const double n = number(rest);
        if (n < 0 || n != std::floor(n))
            throw Error(ErrorCode::parameter_out_of_range, "bounded_planning needs a natural number");
        return bounded_planning(static_cast<std::size_t>(n));
    }
    if (family == "table") {
        std::vector<double> values;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) values.push_back(number(item));
        return table(std::move(values));
    }
    throw Error(ErrorCode::parameter_out_of_range, "unknown discount family '" + family + "'");
}

double Discount::operator()(std::size_t t) const {
    const std::size_t u = t + shift_;
    switch (family_) {
        case DiscountFamily::exponential: return std::pow(parameter_, static_cast<double>(u));
        case DiscountFamily::hyperbolic: return 1.0 / (1.0 + parameter_ * static_cast<double>(u));
        case DiscountFamily::bounded_planning: return static_cast<double>(u) <= parameter_ ? 1.0 : 0.0;
        case DiscountFamily::table: return u < table_.size() ? table_[u] : 0.0;
    }
    return 0.0;
}

Discount Discount::shifted(std::size_t n) const {
    Discount d = *this;
    d.shift_ += n;
    return d;
}

std::optional<std::size_t> Discount::coverage() const {
    if (family_ != DiscountFamily::table) return std::nullopt;
    return table_.size() > shift_ ? table_.size() - shift_ : 0;
}

std::string Discount::to_spec() const {
    std::ostringstream out;
    out.precision(17);
    out << to_string(family_) << ':';
    switch (family_) {
        case DiscountFamily::bounded_planning: out << static_cast<std::size_t>(parameter_); break;
        case DiscountFamily::table:
            for (std::size_t i = 0; i < table_.size(); ++i) out << (i ? "," : "") << table_[i];
            break;
        default: out << parameter_;
    }
    return out.str();
}

void require_covers(const Discount& d, std::size_t horizon) {
    if (auto cov = d.coverage(); cov && *cov < horizon) {
        std::ostringstream msg;
        msg << "table discount covers " << *cov << " weights but the horizon needs " << horizon;
        throw Error(ErrorCode::parameter_out_of_range, msg.str());
    }
}

namespace {

bool nearly_equal(double a, double b) {
    constexpr double rel = 1e-9;
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

ConsistencyReport is_temporally_consistent(const Discount& d, std::size_t horizon) {
    if (horizon < 2) throw Error(ErrorCode::parameter_out_of_range, "consistency needs a horizon of at least 2");
    ConsistencyReport report;
    const std::size_t last = horizon - 2;
    for (std::size_t s = 0; s <= last && !report.witness; ++s)
        for (std::size_t t = s + 1; t <= last; ++t)
            if (!nearly_equal(d(t + 1) * d(s), d(s + 1) * d(t))) {
                report.witness = std::make_pair(s, t);
                break;
            }

    if (!report.witness) {
        report.consistent = true;
        report.gamma = d(1);
        return report;
    }

    // Solve [d(s) d(t); d(s+1) d(t+1)] (x_s, x_t) = (-1, 1): the weighted sum is
    // -1 at shift 0 and +1 at shift 1, a strict reversal against y = 0.
    const auto [s, t] = *report.witness;
    const double a = d(s), b = d(t), c = d(s + 1), e = d(t + 1);
    const double det = a * e - b * c;
    PreferenceReversal rev;
    rev.x.assign(t + 1, 0.0);
    rev.y.assign(t + 1, 0.0);
    rev.x[s] = (-e - b) / det;
    rev.x[t] = (a + c) / det;
    for (std::size_t i = 0; i <= t; ++i) {
        rev.value_at_zero += d(i) * (rev.x[i] - rev.y[i]);
        rev.value_at_shift += d(i + 1) * (rev.x[i] - rev.y[i]);
    }
    report.reversal = rev;
    return report;
}

}  // namespace tirl
