#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace legis::vector {

/// Unit-norm embedding of fixed dimension.
class EmbeddingVector {
public:
    EmbeddingVector() = default;

    /// Scales `values` to unit L2 norm. Throws Error{InvalidArgument} on a
    /// zero, empty, or non-finite input.
    static EmbeddingVector normalized(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return values_.size(); }
    [[nodiscard]] EmbeddingVector operator-() const;

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

private:
    std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// 1 - dot(a, b), clamped to [0, 2]. Throws Error{DimensionMismatch}.
double cosine_distance(const EmbeddingVector& a, const EmbeddingVector& b);

/// Text embedding backend.
class Embedder {
public:
    virtual ~Embedder() = default;
    [[nodiscard]] virtual std::size_t dimension() const = 0;
    /// Throws Error{EmptyText}, or Error{BackendUnavailable} for remote backends.
    [[nodiscard]] virtual EmbeddingVector embed(std::string_view text) const = 0;
};

/// Deterministic offline embedder: signed feature hashing of lowercase word
/// unigrams and adjacent bigrams (stopwords removed) into `dimension` buckets.
class HashingEmbedder final : public Embedder {
public:
    static constexpr std::size_t kDefaultDimension = 64;

    explicit HashingEmbedder(std::size_t dimension = kDefaultDimension);
    HashingEmbedder(std::size_t dimension, std::set<std::string> stopwords);

    [[nodiscard]] std::size_t dimension() const override { return dimension_; }
    [[nodiscard]] EmbeddingVector embed(std::string_view text) const override;

private:
    std::size_t dimension_;
    std::set<std::string> stopwords_;
};

/// Text embedded for a law: title, newline, first `body_chars` code points of the body.
std::string embedding_input(std::string_view title, std::string_view body, std::size_t body_chars = 2048);

} // namespace legis::vector
