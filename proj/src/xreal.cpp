#include "ecc/xreal.hpp"

#include "ecc/errors.hpp"

#include <cctype>

namespace ecc {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

void require_same_length(const ExtVector& x, const ExtVector& y) {
    if (x.size() != y.size())
        throw PreconditionError("vector length mismatch: " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw PreconditionError("malformed rational '" + std::string(text) + "'");
    Rational q;
    q.get_num() = Integer(std::string(num));
    q.get_den() = Integer(std::string(den));
    if (q.get_den() == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    if (text.front() == '-') q = -q;
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

ExtScalar::ExtScalar(const Rational& value) : finite_(value) {
    if (sgn(value) < 0) throw PreconditionError("negative value " + ecc::to_string(value) + " in [0,inf]");
}

ExtScalar::ExtScalar(long value) : ExtScalar(Rational(value)) {}

ExtScalar ExtScalar::infinity() {
    ExtScalar x;
    x.finite_.reset();
    return x;
}

const Rational& ExtScalar::value() const {
    if (!finite_) throw PreconditionError("finite value requested from inf");
    return *finite_;
}

ExtScalar ExtScalar::minus(const ExtScalar& b) const {
    if (b.is_infinite()) throw PreconditionError("subtraction of inf");
    if (is_infinite()) return infinity();
    if (*finite_ < *b.finite_) throw PreconditionError("subtraction below zero");
    return ExtScalar(Rational(*finite_ - *b.finite_));
}

ExtScalar operator+(const ExtScalar& a, const ExtScalar& b) {
    if (a.is_infinite() || b.is_infinite()) return ExtScalar::infinity();
    return ExtScalar(Rational(*a.finite_ + *b.finite_));
}

ExtScalar& ExtScalar::operator+=(const ExtScalar& b) {
    if (!finite_) return *this;
    if (!b.finite_) {
        finite_.reset();
        return *this;
    }
    *finite_ += *b.finite_;
    return *this;
}

ExtScalar operator*(const ExtScalar& a, const ExtScalar& b) {
    if (a.is_zero() || b.is_zero()) return ExtScalar();
    if (a.is_infinite() || b.is_infinite()) return ExtScalar::infinity();
    return ExtScalar(Rational(*a.finite_ * *b.finite_));
}

bool operator==(const ExtScalar& a, const ExtScalar& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return *a.finite_ == *b.finite_;
}

std::strong_ordering operator<=>(const ExtScalar& a, const ExtScalar& b) {
    if (a.is_infinite()) return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    const int c = cmp(*a.finite_, *b.finite_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string ExtScalar::to_string() const { return finite_ ? ecc::to_string(*finite_) : "inf"; }

ExtScalar ExtScalar::parse(std::string_view text) {
    if (text == "inf") return infinity();
    return ExtScalar(parse_rational(text));
}

std::ostream& operator<<(std::ostream& os, const ExtScalar& x) { return os << x.to_string(); }

ExtScalar ext_add(const ExtScalar& a, const ExtScalar& b) { return a + b; }
ExtScalar ext_mul(const ExtScalar& a, const ExtScalar& b) { return a * b; }
bool ext_leq(const ExtScalar& a, const ExtScalar& b) { return a <= b; }

ExtVector vec_add(const ExtVector& x, const ExtVector& y) {
    require_same_length(x, y);
    ExtVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

ExtVector vec_scale(const ExtScalar& t, const ExtVector& x) {
    ExtVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = t * x[i];
    return out;
}

bool vec_leq(const ExtVector& x, const ExtVector& y) {
    require_same_length(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > y[i]) return false;
    return true;
}

bool vec_way_below(const ExtVector& x, const ExtVector& y) {
    require_same_length(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) continue;
        if (x[i].is_zero() && y[i].is_zero()) continue;
        return false;
    }
    return true;
}

ExtVector vec_support_idem(const ExtVector& x) {
    ExtVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].is_infinite()) out[i] = ExtScalar::infinity();
    return out;
}

ExtVector to_ext(const RatVector& x) {
    ExtVector out;
    out.reserve(x.size());
    for (const auto& q : x) out.emplace_back(q);
    return out;
}

std::string to_string(const ExtVector& x) {
    std::string out = "[";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ", ";
        out += x[i].to_string();
    }
    return out + "]";
}

ExtVector parse_ext_vector(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw PreconditionError("vector must be a bracketed list: '" + std::string(text) + "'");
    std::string_view body = trim(text.substr(1, text.size() - 2));
    ExtVector out;
    if (body.empty()) return out;
    while (true) {
        const auto comma = body.find(',');
        out.push_back(ExtScalar::parse(trim(body.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace ecc
