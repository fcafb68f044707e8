#include "ffprime/partition.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ffprime {

Partition::Partition(unsigned k, std::vector<std::uint32_t> mults)
    : k_(k), mults_(std::move(mults)) {
    if (k_ == 0) throw std::invalid_argument("partition: k must be positive");
    if (mults_.size() != k_)
        throw std::invalid_argument("partition: multiplicity vector must have length k");
    std::uint64_t total = 0;
    for (unsigned j = 1; j <= k_; ++j) total += std::uint64_t(j) * mults_[j - 1];
    if (total != k_)
        throw std::invalid_argument("partition: parts do not sum to k");
}

Partition Partition::single_cycle(unsigned k) {
    std::vector<std::uint32_t> m(k, 0);
    m[k - 1] = 1;
    return Partition(k, std::move(m));
}

Partition Partition::parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("partition: empty string");
    std::vector<unsigned> parts;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = s.find('+', pos);
        if (end == std::string_view::npos) end = s.size();
        std::string_view tok = s.substr(pos, end - pos);
        unsigned v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size() || v == 0)
            throw std::invalid_argument("partition: bad part '" + std::string(tok) + "'");
        parts.push_back(v);
        pos = end + 1;
        if (end == s.size()) break;
        if (pos >= s.size()) throw std::invalid_argument("partition: trailing '+'");
    }
    unsigned k = 0;
    for (unsigned v : parts) k += v;
    std::vector<std::uint32_t> m(k, 0);
    for (unsigned v : parts) ++m[v - 1];
    return Partition(k, std::move(m));
}

std::vector<unsigned> Partition::parts() const {
    std::vector<unsigned> out;
    for (unsigned j = k_; j >= 1; --j)
        for (std::uint32_t c = 0; c < mults_[j - 1]; ++c) out.push_back(j);
    return out;
}

std::string Partition::to_string() const {
    std::string out;
    for (unsigned v : parts()) {
        if (!out.empty()) out += '+';
        out += std::to_string(v);
    }
    return out;
}

namespace {

void extend(std::vector<unsigned>& cur, unsigned remaining, unsigned cap,
            std::vector<Partition>& out, unsigned k) {
    if (remaining == 0) {
        std::vector<std::uint32_t> m(k, 0);
        for (unsigned v : cur) ++m[v - 1];
        out.emplace_back(k, std::move(m));
        return;
    }
    for (unsigned v = std::min(cap, remaining); v >= 1; --v) {
        cur.push_back(v);
        extend(cur, remaining - v, v, out, k);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(unsigned k) {
    if (k == 0) throw std::invalid_argument("partitions_of: k must be positive");
    std::vector<Partition> out;
    std::vector<unsigned> cur;
    extend(cur, k, k, out, k);
    return out;
}

Rational cauchy_probability(const Partition& lambda) {
    BigInt denom = 1;
    for (unsigned j = 1; j <= lambda.k(); ++j) {
        std::uint32_t c = lambda.mult(j);
        for (std::uint32_t i = 0; i < c; ++i) denom *= j;
        for (std::uint32_t i = 2; i <= c; ++i) denom *= i;
    }
    return Rational(1, denom);
}

Rational class_probability(std::span<const Partition> lambdas) {
    if (lambdas.empty())
        throw std::invalid_argument("class_probability: need at least one cycle type");
    Rational r = 1;
    for (const auto& l : lambdas) r *= cauchy_probability(l);
    return r;
}

}  // namespace ffprime
