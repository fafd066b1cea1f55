#include "homotransfer/scalar.hpp"

#include <limits>
#include <utility>

#include "homotransfer/errors.hpp"

namespace homotransfer {

namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

std::int64_t residue(const mpz_class& z, std::uint32_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return static_cast<std::int64_t>(r.get_ui());
}

bool fits(const mpz_class& z) { return z.fits_slong_p(); }

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw ParseError("field characteristic " + std::to_string(p) + " is not prime");
    return Field(p);
}

Field Field::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.rfind("Fp:", 0) == 0) {
        const std::string digits = text.substr(3);
        if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad field spec '" + text + "'");
        return prime(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    throw ParseError("bad field spec '" + text + "' (expected Q or Fp:<p>)");
}

std::string Field::to_string() const { return p_ ? "Fp:" + std::to_string(p_) : "Q"; }

Scalar::Scalar(long long num, long long den) {
    if (den == 0) throw AxiomError("division by zero");
    set_q(num, den);
}

Scalar::Scalar(long long v, const Field& f) : num_(v) {
    if (!f.is_rational()) *this = in_field(f);
}

Scalar Scalar::from_mpq(const mpq_class& q) {
    Scalar s;
    s.set_big(q);
    return s;
}

void Scalar::set_q(__int128 num, __int128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const __int128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    if (num >= kMin && num <= kMax && den <= kMax) {
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
        big_.reset();
        return;
    }
    // wide result; route through GMP
    auto to_mpz = [](__int128 v) {
        const bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(u >> 64));
        mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    };
    mpq_class q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    set_big(std::move(q));
}

void Scalar::set_big(mpq_class q) {
    q.canonicalize();
    if (fits(q.get_num()) && fits(q.get_den())) {
        num_ = q.get_num().get_si();
        den_ = q.get_den().get_si();
        big_.reset();
        return;
    }
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

mpq_class Scalar::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

Scalar Scalar::in_field(const Field& f) const {
    if (f.is_rational()) {
        if (p_ != 0) throw StructuralError("cannot lift an F_p value to Q");
        return *this;
    }
    const std::uint32_t p = f.characteristic();
    if (p_ == p) return *this;
    if (p_ != 0) throw StructuralError("mixed prime fields F_" + std::to_string(p_) + " and F_" + std::to_string(p));
    std::int64_t n, d;
    if (big_) {
        n = residue(big_->get_num(), p);
        d = residue(big_->get_den(), p);
    } else {
        n = ((num_ % static_cast<std::int64_t>(p)) + p) % p;
        d = den_ % static_cast<std::int64_t>(p);
    }
    if (d == 0) throw AxiomError("denominator not invertible in " + f.to_string());
    Scalar s;
    s.p_ = p;
    s.num_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(n) * mod_pow(static_cast<std::uint64_t>(d), p - 2, p) % p);
    return s;
}

void Scalar::unify(Scalar& o) {
    if (p_ == o.p_) return;
    if (p_ == 0) {
        *this = in_field(o.field());
        return;
    }
    o = o.in_field(field());
}

Scalar Scalar::parse(const std::string& text, const Field& f) {
    auto bad = [&] { return ParseError("bad coefficient '" + text + "'"); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    const std::string a = text.substr(0, slash);
    const std::string b = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto digits_ok = [](const std::string& s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && s[0] == '-') i = 1;
        if (i >= s.size()) return false;
        return s.find_first_not_of("0123456789", i) == std::string::npos;
    };
    if (!digits_ok(a, true) || !digits_ok(b, false)) throw bad();
    mpz_class num(a, 10), den(b, 10);
    if (den == 0) throw bad();
    Scalar s = from_mpq(mpq_class(num, den));
    if (!f.is_rational()) {
        if (residue(den, f.characteristic()) == 0) throw ParseError("coefficient '" + text + "' has a denominator divisible by p");
        s = s.in_field(f);
    }
    return s;
}

std::string Scalar::to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw AxiomError("inverse of zero");
    if (p_) {
        Scalar s = *this;
        s.num_ = static_cast<std::int64_t>(mod_pow(static_cast<std::uint64_t>(num_), p_ - 2, p_));
        return s;
    }
    if (big_) return from_mpq(1 / *big_);
    Scalar s;
    s.set_q(den_, num_);
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (p_) {
        s.num_ = num_ ? p_ - num_ : 0;
    } else if (big_) {
        s.set_big(-*big_);
    } else {
        s.set_q(-static_cast<__int128>(num_), den_);
    }
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o0) {
    Scalar o = o0;
    unify(o);
    if (p_) {
        num_ = (num_ + o.num_) % p_;
    } else if (big_ || o.big_) {
        set_big(to_mpq() + o.to_mpq());
    } else if (den_ == 1 && o.den_ == 1) {
        set_q(static_cast<__int128>(num_) + o.num_, 1);
    } else {
        set_q(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
              static_cast<__int128>(den_) * o.den_);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o0) {
    Scalar o = o0;
    unify(o);
    if (p_) {
        num_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(num_) * static_cast<std::uint64_t>(o.num_) % p_);
    } else if (big_ || o.big_) {
        set_big(to_mpq() * o.to_mpq());
    } else {
        set_q(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a0, const Scalar& b0) {
    Scalar a = a0, b = b0;
    a.unify(b);
    if (a.big_ || b.big_) {
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical: small-representable values are never big
    }
    return a.num_ == b.num_ && a.den_ == b.den_;
}

}  // namespace homotransfer
