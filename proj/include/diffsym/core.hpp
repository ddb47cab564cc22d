#pragma once

#include <concepts>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <gmpxx.h>

namespace diffsym {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error("division by zero: " + what) {}
};

/// A caller-side precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// z^n - a is reducible over the base field.
class ReducibleRadicand : public Error {
public:
    using Error::Error;
};

/// Operands belong to different parent structures.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// Element of a commutative ring whose parent is carried by the value itself.
///
/// zero()/one() build the neutral elements of the same parent; this lets the
/// generic containers (polynomials, matrices, symbol algebra elements) create
/// scalars without a separate context object.
template <class T>
concept RingElement = std::regular<T> && requires(const T& a, const T& b) {
    { a + b } -> std::same_as<T>;
    { a - b } -> std::same_as<T>;
    { a * b } -> std::same_as<T>;
    { -a } -> std::same_as<T>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.zero() } -> std::same_as<T>;
    { a.one() } -> std::same_as<T>;
};

template <class T>
concept FieldElement = RingElement<T> && requires(const T& a) {
    { a.inv() } -> std::same_as<T>;
};

/// A ring element equipped with a derivation of its parent.
template <class T>
concept DifferentialElement = RingElement<T> && requires(const T& a) {
    { a.derive() } -> std::same_as<T>;
};

template <FieldElement T>
T operator/(const T& a, const T& b) {
    return a * b.inv();
}

template <RingElement T>
T& operator+=(T& a, const T& b) {
    a = a + b;
    return a;
}

template <RingElement T>
T& operator-=(T& a, const T& b) {
    a = a - b;
    return a;
}

template <RingElement T>
T& operator*=(T& a, const T& b) {
    a = a * b;
    return a;
}

/// Integer multiple n*a.
template <RingElement T>
T scale(const T& a, long n) {
    return a * a.one().from_integer(n);
}

/// a^e for e >= 0; negative e needs a field.
template <RingElement T>
T power(const T& a, long e) {
    if (e < 0) {
        if constexpr (FieldElement<T>) {
            return power(a.inv(), -e);
        } else {
            throw PreconditionError("negative exponent in a ring without inverses");
        }
    }
    T result = a.one();
    T base = a;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

/// Lifts x from a subfield of the tower into the parent of `like`.
///
/// Every tower type exposes `base_zero()` (the zero of the field directly
/// below it) and `embed_base(b)`; embedding recurses down until the types match.
template <class E, class T>
E embed(const E& like, const T& x) {
    if constexpr (std::is_same_v<E, T>) {
        return x;
    } else {
        return like.embed_base(embed(like.base_zero(), x));
    }
}

inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

inline long checked_long(const Integer& z) {
    if (!z.fits_slong_p()) throw Error("integer out of range");
    return z.get_si();
}

}  // namespace diffsym
