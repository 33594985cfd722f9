#include "mcspace/lie_series.hpp"

#include <mutex>

namespace mcspace {
namespace {

Scalar factorial(int n)
{
    Scalar f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

struct Block {
    int r, s;
};

// All sequences (r_1,s_1),...,(r_n,s_n) with r_i + s_i >= 1 and total length <= max_length.
void enumerate(int max_length, int used, std::vector<Block>& blocks,
               std::map<BracketWord, Scalar>& out)
{
    if (!blocks.empty()) {
        const int n = static_cast<int>(blocks.size());
        Scalar coeff((n % 2 == 1) ? 1 : -1, n);
        Scalar denom = used;
        BracketWord word;
        for (const auto& b : blocks) {
            denom *= factorial(b.r) * factorial(b.s);
            word.insert(word.end(), static_cast<std::size_t>(b.r), 0);
            word.insert(word.end(), static_cast<std::size_t>(b.s), 1);
        }
        coeff /= denom;
        // [a, a] = 0 kills any word ending in a repeated letter
        const bool dead = word.size() >= 2 && word[word.size() - 1] == word[word.size() - 2];
        if (!dead)
            out[word] += coeff;
    }
    for (int len = 1; used + len <= max_length; ++len)
        for (int r = 0; r <= len; ++r) {
            blocks.push_back({r, len - r});
            enumerate(max_length, used + len, blocks, out);
            blocks.pop_back();
        }
}

} // namespace

const std::vector<BchTerm>& bch_terms(int max_length)
{
    static std::mutex mu;
    static std::map<int, std::vector<BchTerm>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(max_length);
    if (it != cache.end())
        return it->second;
    std::map<BracketWord, Scalar> merged;
    std::vector<Block> blocks;
    enumerate(max_length, 0, blocks, merged);
    std::vector<BchTerm> terms;
    for (auto& [word, coeff] : merged)
        if (sgn(coeff) != 0)
            terms.push_back({coeff, word});
    return cache.emplace(max_length, std::move(terms)).first->second;
}

} // namespace mcspace
