#include "legis/vector/embedding.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/text/lexicons.hpp"
#include "legis/text/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace legis::vector {

EmbeddingVector EmbeddingVector::normalized(std::vector<double> values)
{
    if (values.empty())
        throw Error(ErrorCode::InvalidArgument, "empty embedding");
    double sq = 0;
    for (double v : values) {
        if (!std::isfinite(v))
            throw Error(ErrorCode::InvalidArgument, "non-finite embedding component");
        sq += v * v;
    }
    if (sq == 0)
        throw Error(ErrorCode::InvalidArgument, "zero embedding");
    const double norm = std::sqrt(sq);
    for (double& v : values)
        v /= norm;
    EmbeddingVector out;
    out.values_ = std::move(values);
    return out;
}

EmbeddingVector EmbeddingVector::operator-() const
{
    EmbeddingVector out = *this;
    for (double& v : out.values_)
        v = -v;
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b)
{
    if (a.dimension() != b.dimension())
        throw Error(ErrorCode::DimensionMismatch, "embedding dimensions differ");
    return std::clamp(1.0 - dot(a.values(), b.values()), 0.0, 2.0);
}

HashingEmbedder::HashingEmbedder(std::size_t dimension)
    : HashingEmbedder(dimension, text::default_stopwords())
{
}

HashingEmbedder::HashingEmbedder(std::size_t dimension, std::set<std::string> stopwords)
    : dimension_(dimension), stopwords_(std::move(stopwords))
{
    if (dimension_ == 0)
        throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
}

EmbeddingVector HashingEmbedder::embed(std::string_view input) const
{
    const auto all = text::words(input);
    std::vector<std::string> tokens;
    for (const auto& w : all)
        if (!stopwords_.contains(w))
            tokens.push_back(w);
    if (tokens.empty())
        tokens = all;
    if (tokens.empty())
        throw Error(ErrorCode::EmptyText, "nothing to embed");

    std::vector<double> values(dimension_, 0.0);
    const auto add = [&](const std::string& feature) {
        const std::uint64_t h = fnv1a64(feature);
        values[h % dimension_] += (h >> 63) ? -1.0 : 1.0;
    };
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        add("u:" + tokens[i]);
        if (i + 1 < tokens.size())
            add("b:" + tokens[i] + " " + tokens[i + 1]);
    }
    // Colliding features can cancel exactly; fall back to a fixed direction.
    if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; }))
        values[fnv1a64(tokens.front()) % dimension_] = 1.0;
    return EmbeddingVector::normalized(std::move(values));
}

std::string embedding_input(std::string_view title, std::string_view body, std::size_t body_chars)
{
    std::string out(trim(title));
    const auto prefix = trim(utf8_prefix(body, body_chars));
    if (!out.empty() && !prefix.empty())
        out.push_back('\n');
    out += prefix;
    return out;
}

} // namespace legis::vector
