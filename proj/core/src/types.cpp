#include "hypermatch/types.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <stdexcept>

namespace hypermatch {

Mask to_mask(const VertexSet& vs)
{
    Mask m = 0;
    for (Vertex v : vs) {
        if (v < 0 || v >= kMaxSearchVertices)
            throw std::domain_error("vertex id exceeds mask width");
        m |= Mask{1} << v;
    }
    return m;
}

VertexSet from_mask(Mask m)
{
    VertexSet out;
    out.reserve(popcount(m));
    while (m) {
        out.push_back(lowest_vertex(m));
        m &= m - 1;
    }
    return out;
}

BigInt binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt ipow(const BigInt& base, unsigned exp)
{
    BigInt r = 1;
    BigInt b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

namespace {

BigInt parse_integer(std::string_view s)
{
    if (s.empty()) throw std::invalid_argument("empty number");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("malformed number");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("malformed number: " + std::string(s));
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        std::string frac(text.substr(dot + 1));
        if (digits.empty() || digits == "-" || digits == "+") digits += "0";
        BigInt whole = parse_integer(digits + frac);
        return Rational(whole, ipow(10, static_cast<unsigned>(frac.size())));
    }
    return Rational(parse_integer(text));
}

std::string to_string(const Rational& r)
{
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_string(const BigInt& v) { return v.str(); }

BigInt floor_of(const Rational& r)
{
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (num < 0) throw std::invalid_argument("floor_of expects a nonnegative value");
    return num / den;
}

void check_vertex_set(const VertexSet& vs, int n)
{
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || vs[i] >= n)
            throw std::invalid_argument("vertex " + std::to_string(vs[i]) + " out of range");
        if (i > 0 && vs[i - 1] >= vs[i])
            throw std::invalid_argument("vertex set must be sorted and duplicate-free");
    }
}

std::vector<VertexSet> subsets_of_size(const VertexSet& pool, int k)
{
    std::vector<VertexSet> out;
    for_each_subset(pool, k, [&](const VertexSet& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet iota_set(int begin, int end)
{
    VertexSet out;
    for (int v = begin; v < end; ++v) out.push_back(v);
    return out;
}

}  // namespace hypermatch
