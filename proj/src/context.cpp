#include "fermatkit/context.hpp"

#include <cmath>
#include <optional>

namespace fermatkit {

namespace {

// If num/den is a (small) rational integer, returns it.
std::optional<long> integer_ratio(const Scalar& num, const Scalar& den) {
    Scalar r = num / den;
    const GaussianRational& g = r.rat();
    if (g.im != 0) return std::nullopt;
    if (g.re.get_den() != 1) return std::nullopt;
    const mpz_class& n = g.re.get_num();
    if (!n.fits_slong_p()) return std::nullopt;
    long val = n.get_si();
    if (val > 256 || val < -256) return std::nullopt; // keep derived powers cheap
    return val;
}

Scalar integer_power(const Scalar& v, long n) {
    if (n >= 0) return v.pow_nat(static_cast<unsigned>(n));
    return v.inv().pow_nat(static_cast<unsigned>(-n));
}

} // namespace

void Context::declare_exponential(const Scalar& key, const Scalar& value) {
    if (!key.is_exact() || !value.is_exact()) {
        raise(ErrorCode::InvalidArgument, "exponential declarations are exact-backend only");
    }
    if (value.is_zero()) {
        raise(ErrorCode::InvalidArgument, "exponential value must be nonzero");
    }
    if (key.is_zero()) {
        if (!value.equals(Scalar::exact(1))) {
            raise(ErrorCode::DuplicateExponential, "e^0 must be 1");
        }
        return;
    }
    for (const auto& [k, v] : table_) {
        if (key.equals(k)) {
            if (value.equals(v)) return; // re-declaration of the same fact
            raise(ErrorCode::DuplicateExponential,
                  "e^{" + key.str() + "} already declared as " + v.str());
        }
        if (auto n = integer_ratio(key, k)) {
            if (!value.equals(integer_power(v, *n))) {
                raise(ErrorCode::DuplicateExponential,
                      "e^{" + key.str() + "} = " + value.str() +
                          " conflicts with the power derived from e^{" + k.str() + "} = " +
                          v.str());
            }
        }
        if (auto m = integer_ratio(k, key)) {
            if (!v.equals(integer_power(value, *m))) {
                raise(ErrorCode::DuplicateExponential,
                      "e^{" + key.str() + "} = " + value.str() +
                          " conflicts with the previously declared e^{" + k.str() + "} = " +
                          v.str());
            }
        }
    }
    table_.emplace_back(key, value);
}

Scalar Context::exp_of(const Scalar& u) const {
    if (!u.is_exact()) {
        return Scalar::floating(std::exp(u.cplx()));
    }
    if (u.is_zero()) return Scalar::exact(1);
    for (const auto& [k, v] : table_) {
        if (u.equals(k)) return v;
        if (auto n = integer_ratio(u, k)) return integer_power(v, *n);
    }
    raise(ErrorCode::NonExactExponential,
          "e^{" + u.str() +
              "} has no registered exact value; declare it or use the float backend");
}

} // namespace fermatkit
