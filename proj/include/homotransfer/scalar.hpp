#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace homotransfer {

// Ground field: the rationals or a prime field F_p.
class Field {
public:
    Field() = default;
    static Field rationals() { return Field(); }
    static Field prime(std::uint32_t p);
    // "Q", "Fp:5"
    static Field parse(const std::string& text);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string to_string() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_ = 0;
};

// Exact scalar. Rationals use an int64 numerator/denominator pair and fall
// back to GMP when a result does not fit. Prime field elements are residues
// in [0, p). A value built without a field (integer literals) is rational and
// is reduced mod p when combined with a prime field element.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(long long num, long long den);
    Scalar(long long v, const Field& f);
    static Scalar from_mpq(const mpq_class& q);

    // "3", "-2/7"; for F_p any integer or fraction with invertible denominator
    static Scalar parse(const std::string& text, const Field& f);

    std::string to_string() const;
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    std::uint32_t modulus() const { return p_; }
    Field field() const { return p_ ? Field::prime(p_) : Field::rationals(); }
    Scalar in_field(const Field& f) const;

    Scalar inverse() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

    mpq_class to_mpq() const;
    bool is_big() const { return static_cast<bool>(big_); }

private:
    void set_q(__int128 num, __int128 den);
    void set_big(mpq_class q);
    void unify(Scalar& o);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::uint32_t p_ = 0;
    std::shared_ptr<const mpq_class> big_;
};

// (-1)^e
inline Scalar koszul(long long e) { return (e & 1) ? Scalar(-1) : Scalar(1); }
inline int sign_of(long long e) { return (e & 1) ? -1 : 1; }

}  // namespace homotransfer
