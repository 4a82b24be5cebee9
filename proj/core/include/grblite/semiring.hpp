#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "grblite/error.hpp"

namespace grblite {

// ---------------------------------------------------------------------------
// Scalar domains
// ---------------------------------------------------------------------------

enum class ScalarDomain { float64, int64, boolean };

inline std::string_view to_string(ScalarDomain d) {
    switch (d) {
        case ScalarDomain::float64: return "float64";
        case ScalarDomain::int64: return "int64";
        case ScalarDomain::boolean: return "boolean";
    }
    return "unknown";
}

template <class T>
struct domain_of;

template <>
struct domain_of<double> {
    static constexpr ScalarDomain value = ScalarDomain::float64;
};
template <>
struct domain_of<std::int64_t> {
    static constexpr ScalarDomain value = ScalarDomain::int64;
};
template <>
struct domain_of<bool> {
    static constexpr ScalarDomain value = ScalarDomain::boolean;
};

/// Saturation sentinels for the tropical-style integer semirings. Stored
/// entries may carry them; the saturating operations never step past them.
inline constexpr std::int64_t pos_inf = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int64_t neg_inf = std::numeric_limits<std::int64_t>::min();

/// Scalar equality used by matrix comparison and the law suites: exact on
/// the integer and boolean domains, relative 1e-12 with an absolute floor
/// of the same magnitude on float64.
inline constexpr double float_rel_tol = 1e-12;

inline bool scalar_eq(double a, double b) {
    if (a == b) {
        return true;
    }
    const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
    return std::fabs(a - b) <= float_rel_tol * scale;
}
inline bool scalar_eq(std::int64_t a, std::int64_t b) { return a == b; }
inline bool scalar_eq(bool a, bool b) { return a == b; }

// ---------------------------------------------------------------------------
// Semiring record
// ---------------------------------------------------------------------------

struct SemiringFlags {
    bool add_commutative = false;
    bool add_associative = false;
    bool mult_commutative = false;
    bool mult_associative = false;
    bool distributive = false;
    bool add_identity_annihilates_mult = false;
};

/// The algebra every kernel is parameterized by: a scalar domain, the
/// combining operation `add` with its identity (the value an absent sparse
/// entry represents), the coupling operation `mult` with its identity, and
/// the declared algebraic properties. Instances are immutable once built and
/// safe to share across concurrent kernel calls.
template <class T>
struct Semiring {
    using Scalar = T;
    using BinaryOp = T (*)(T, T);

    std::string name;
    ScalarDomain domain = domain_of<T>::value;
    BinaryOp add = nullptr;
    T add_identity{};
    BinaryOp mult = nullptr;
    T mult_identity{};
    SemiringFlags flags{};
};

// ---------------------------------------------------------------------------
// Scalar sampling (drives randomized flag verification)
// ---------------------------------------------------------------------------

template <class T>
using ScalarSampler = T (*)(std::mt19937_64&);

inline double sample_float64(std::mt19937_64& rng) {
    // 53-bit mantissa draw; avoids unspecified distribution internals.
    const double u = double(rng() >> 11) * 0x1.0p-53;
    return u * 16.0 - 8.0;
}

inline std::int64_t sample_int64(std::mt19937_64& rng) {
    // Mostly small magnitudes, occasionally a sentinel or a larger value, so
    // both ordinary arithmetic and the saturation boundaries get exercised.
    const std::uint64_t pick = rng() % 10;
    if (pick == 0) {
        return pos_inf;
    }
    if (pick == 1) {
        return neg_inf;
    }
    if (pick == 2) {
        return std::int64_t(rng() % (2u << 20)) - (1 << 20);
    }
    return std::int64_t(rng() % 33) - 16;
}

inline bool sample_boolean(std::mt19937_64& rng) { return (rng() & 1) != 0; }

template <class T>
T default_sample(std::mt19937_64& rng);

template <>
inline double default_sample<double>(std::mt19937_64& rng) {
    return sample_float64(rng);
}
template <>
inline std::int64_t default_sample<std::int64_t>(std::mt19937_64& rng) {
    return sample_int64(rng);
}
template <>
inline bool default_sample<bool>(std::mt19937_64& rng) {
    return sample_boolean(rng);
}

// ---------------------------------------------------------------------------
// Flag verification
// ---------------------------------------------------------------------------

struct FlagCheck {
    std::string property;
    bool declared = false;
    bool passed = false;
    long samples = 0;
    std::string counterexample; // empty when passed
};

namespace detail {

template <class T>
std::string show_scalar(T v) {
    if constexpr (std::is_same_v<T, bool>) {
        return v ? "true" : "false";
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
        if (v == pos_inf) return "+inf";
        if (v == neg_inf) return "-inf";
        return std::to_string(v);
    } else {
        return std::to_string(v);
    }
}

template <class T, class Law>
FlagCheck check_law(const char* property, bool declared, long samples,
                    std::mt19937_64& rng, ScalarSampler<T> sample, Law&& law) {
    FlagCheck check{property, declared, true, 0, {}};
    if (!declared) {
        return check;
    }
    check.samples = samples;
    for (long n = 0; n < samples; ++n) {
        const T a = sample(rng);
        const T b = sample(rng);
        const T c = sample(rng);
        if (!law(a, b, c)) {
            check.passed = false;
            check.counterexample = "a=" + show_scalar(a) + " b=" + show_scalar(b) +
                                   " c=" + show_scalar(c);
            return check;
        }
    }
    return check;
}

} // namespace detail

/// Checks the declared properties of a semiring against `samples` random
/// scalar triples per property. The identity laws are always checked; the
/// optional flags only when declared. Failures come back as report entries,
/// never exceptions.
template <class T>
std::vector<FlagCheck> verify_flags(const Semiring<T>& s, long samples,
                                    std::uint64_t seed = 0x5eedf1a65u,
                                    ScalarSampler<T> sample = default_sample<T>) {
    detail::require(samples >= 1, "verify_flags: samples must be >= 1, got ", samples);
    std::mt19937_64 rng(seed);
    std::vector<FlagCheck> report;

    report.push_back(detail::check_law<T>(
        "add_identity", true, samples, rng, sample,
        [&](T a, T, T) { return scalar_eq(s.add(s.add_identity, a), a) &&
                                scalar_eq(s.add(a, s.add_identity), a); }));
    report.push_back(detail::check_law<T>(
        "mult_identity", true, samples, rng, sample,
        [&](T a, T, T) { return scalar_eq(s.mult(s.mult_identity, a), a) &&
                                scalar_eq(s.mult(a, s.mult_identity), a); }));
    report.push_back(detail::check_law<T>(
        "add_commutative", s.flags.add_commutative, samples, rng, sample,
        [&](T a, T b, T) { return scalar_eq(s.add(a, b), s.add(b, a)); }));
    report.push_back(detail::check_law<T>(
        "add_associative", s.flags.add_associative, samples, rng, sample,
        [&](T a, T b, T c) {
            return scalar_eq(s.add(s.add(a, b), c), s.add(a, s.add(b, c)));
        }));
    report.push_back(detail::check_law<T>(
        "mult_commutative", s.flags.mult_commutative, samples, rng, sample,
        [&](T a, T b, T) { return scalar_eq(s.mult(a, b), s.mult(b, a)); }));
    report.push_back(detail::check_law<T>(
        "mult_associative", s.flags.mult_associative, samples, rng, sample,
        [&](T a, T b, T c) {
            return scalar_eq(s.mult(s.mult(a, b), c), s.mult(a, s.mult(b, c)));
        }));
    report.push_back(detail::check_law<T>(
        "distributive", s.flags.distributive, samples, rng, sample,
        [&](T a, T b, T c) {
            return scalar_eq(s.mult(a, s.add(b, c)), s.add(s.mult(a, b), s.mult(a, c)));
        }));
    report.push_back(detail::check_law<T>(
        "add_identity_annihilates_mult", s.flags.add_identity_annihilates_mult,
        samples, rng, sample, [&](T a, T, T) {
            return scalar_eq(s.mult(s.add_identity, a), s.add_identity) &&
                   scalar_eq(s.mult(a, s.add_identity), s.add_identity);
        }));
    return report;
}

/// Builds a semiring without checking the declared flags. Intended for
/// experiments and for exercising the law suite against broken algebras.
template <class T>
Semiring<T> make_semiring_unchecked(std::string name, typename Semiring<T>::BinaryOp add,
                                    T add_identity, typename Semiring<T>::BinaryOp mult,
                                    T mult_identity, SemiringFlags flags) {
    detail::require(add != nullptr && mult != nullptr,
                    "make_semiring: '", name, "' needs both scalar operations");
    Semiring<T> s;
    s.name = std::move(name);
    s.add = add;
    s.add_identity = add_identity;
    s.mult = mult;
    s.mult_identity = mult_identity;
    s.flags = flags;
    return s;
}

/// Builds a semiring and verifies every declared flag with randomized scalar
/// testing (>= 1000 samples per flag). A declared property that fails the
/// check rejects the construction.
template <class T>
Semiring<T> make_semiring(std::string name, typename Semiring<T>::BinaryOp add,
                          T add_identity, typename Semiring<T>::BinaryOp mult,
                          T mult_identity, SemiringFlags flags,
                          ScalarSampler<T> sample = default_sample<T>,
                          long samples = 1000) {
    Semiring<T> s = make_semiring_unchecked<T>(std::move(name), add, add_identity,
                                               mult, mult_identity, flags);
    for (const FlagCheck& check : verify_flags(s, std::max<long>(samples, 1000),
                                               0x5eedf1a65u, sample)) {
        if (!check.passed) {
            detail::fail("semiring '", s.name, "': declared property '", check.property,
                         "' failed randomized verification (", check.counterexample, ")");
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Builtin semirings
// ---------------------------------------------------------------------------

namespace detail {

// Signed overflow is undefined, so the plus/times integer ring works in
// two's-complement wrapping arithmetic (exact modulo 2^64).
inline std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
    return std::int64_t(std::uint64_t(a) + std::uint64_t(b));
}
inline std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
    return std::int64_t(std::uint64_t(a) * std::uint64_t(b));
}

// Sentinel-absorbing saturating addition: inf + x = inf, and finite sums
// clamp at the sentinels instead of overflowing.
inline std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a == pos_inf || b == pos_inf) {
        return pos_inf;
    }
    if (a == neg_inf || b == neg_inf) {
        return neg_inf;
    }
    if (b > 0 && a > pos_inf - b) {
        return pos_inf;
    }
    if (b < 0 && a < neg_inf - b) {
        return neg_inf;
    }
    return a + b;
}

inline std::int64_t min_i64(std::int64_t a, std::int64_t b) { return std::min(a, b); }
inline std::int64_t max_i64(std::int64_t a, std::int64_t b) { return std::max(a, b); }
inline double add_f64(double a, double b) { return a + b; }
inline double mul_f64(double a, double b) { return a * b; }
inline bool or_bool(bool a, bool b) { return a || b; }
inline bool and_bool(bool a, bool b) { return a && b; }

inline SemiringFlags all_flags() {
    return SemiringFlags{true, true, true, true, true, true};
}

} // namespace detail

namespace semirings {

/// Ordinary arithmetic on float64. Addition is declared associative with the
/// usual caveat: IEEE sums are reassociation-stable only to roundoff, so law
/// suites compare this domain at relative tolerance 1e-12.
inline const Semiring<double>& plus_times_f64() {
    static const Semiring<double> s = make_semiring<double>(
        "plus_times_f64", detail::add_f64, 0.0, detail::mul_f64, 1.0, detail::all_flags());
    return s;
}

inline const Semiring<std::int64_t>& plus_times_i64() {
    static const Semiring<std::int64_t> s = make_semiring<std::int64_t>(
        "plus_times_i64", detail::wrap_add, 0, detail::wrap_mul, 1, detail::all_flags());
    return s;
}

inline const Semiring<bool>& or_and_bool() {
    static const Semiring<bool> s = make_semiring<bool>(
        "or_and_bool", detail::or_bool, false, detail::and_bool, true, detail::all_flags());
    return s;
}

/// Tropical shortest-path algebra: combine with min, couple with saturating
/// addition, absent entries read as +inf.
inline const Semiring<std::int64_t>& min_plus_i64() {
    static const Semiring<std::int64_t> s = make_semiring<std::int64_t>(
        "min_plus_i64", detail::min_i64, pos_inf, detail::sat_add, 0, detail::all_flags());
    return s;
}

inline const Semiring<std::int64_t>& max_plus_i64() {
    static const Semiring<std::int64_t> s = make_semiring<std::int64_t>(
        "max_plus_i64", detail::max_i64, neg_inf, detail::sat_add, 0, detail::all_flags());
    return s;
}

/// Bottleneck algebra: combine with max, couple with min.
inline const Semiring<std::int64_t>& max_min_i64() {
    static const Semiring<std::int64_t> s = make_semiring<std::int64_t>(
        "max_min_i64", detail::max_i64, neg_inf, detail::min_i64, pos_inf,
        detail::all_flags());
    return s;
}

} // namespace semirings

inline const std::vector<std::string>& builtin_semiring_names() {
    static const std::vector<std::string> names = {
        "plus_times_f64", "plus_times_i64", "or_and_bool",
        "min_plus_i64",   "max_plus_i64",   "max_min_i64",
    };
    return names;
}

// ---------------------------------------------------------------------------
// Name lookup and the user registration hook
// ---------------------------------------------------------------------------

namespace detail {

template <class T>
std::map<std::string, Semiring<T>, std::less<>>& semiring_registry() {
    static std::map<std::string, Semiring<T>, std::less<>> registry;
    return registry;
}

inline std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

template <class T>
const Semiring<T>* find_builtin(std::string_view name) {
    if constexpr (std::is_same_v<T, double>) {
        if (name == "plus_times_f64") return &semirings::plus_times_f64();
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
        if (name == "plus_times_i64") return &semirings::plus_times_i64();
        if (name == "min_plus_i64") return &semirings::min_plus_i64();
        if (name == "max_plus_i64") return &semirings::max_plus_i64();
        if (name == "max_min_i64") return &semirings::max_min_i64();
    } else if constexpr (std::is_same_v<T, bool>) {
        if (name == "or_and_bool") return &semirings::or_and_bool();
    }
    return nullptr;
}

} // namespace detail

/// Looks up one of the six builtin semirings of scalar type T by name.
template <class T>
const Semiring<T>& builtin_semiring(std::string_view name) {
    if (const Semiring<T>* s = detail::find_builtin<T>(name)) {
        return *s;
    }
    detail::fail("unknown builtin semiring '", std::string(name), "' for domain ",
                 to_string(domain_of<T>::value));
}

/// Registers a user-defined semiring for name-based lookup. Builtin names
/// are reserved.
template <class T>
void register_semiring(const Semiring<T>& s) {
    for (const std::string& builtin : builtin_semiring_names()) {
        detail::require(s.name != builtin, "register_semiring: '", s.name,
                        "' is a builtin name");
    }
    std::lock_guard<std::mutex> lock(detail::registry_mutex());
    auto& registry = detail::semiring_registry<T>();
    detail::require(!registry.count(s.name), "register_semiring: '", s.name,
                    "' is already registered");
    registry.emplace(s.name, s);
}

/// Looks up a semiring by name among the builtins and the registered ones.
template <class T>
const Semiring<T>& named_semiring(std::string_view name) {
    if (const Semiring<T>* s = detail::find_builtin<T>(name)) {
        return *s;
    }
    std::lock_guard<std::mutex> lock(detail::registry_mutex());
    auto& registry = detail::semiring_registry<T>();
    auto it = registry.find(name);
    if (it != registry.end()) {
        return it->second;
    }
    detail::fail("unknown semiring '", std::string(name), "' for domain ",
                 to_string(domain_of<T>::value));
}

/// Scalar domain of a named semiring (builtin or registered); errors on
/// unknown names.
inline ScalarDomain semiring_domain(std::string_view name) {
    if (name == "plus_times_f64") return ScalarDomain::float64;
    if (name == "or_and_bool") return ScalarDomain::boolean;
    if (name == "plus_times_i64" || name == "min_plus_i64" || name == "max_plus_i64" ||
        name == "max_min_i64") {
        return ScalarDomain::int64;
    }
    std::lock_guard<std::mutex> lock(detail::registry_mutex());
    if (detail::semiring_registry<double>().count(name)) return ScalarDomain::float64;
    if (detail::semiring_registry<std::int64_t>().count(name)) return ScalarDomain::int64;
    if (detail::semiring_registry<bool>().count(name)) return ScalarDomain::boolean;
    detail::fail("unknown semiring '", std::string(name), "'");
}

} // namespace grblite
