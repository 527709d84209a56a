#pragma once

#include "legis/vector/embedding.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace legis::vector {

struct HnswParams {
    std::size_t dimension = HashingEmbedder::kDefaultDimension;
    std::size_t max_neighbors = 16; ///< M; level 0 allows 2M
    std::size_t ef_construction = 200;
    std::uint64_t seed = 42;

    friend bool operator==(const HnswParams&, const HnswParams&) = default;
};

inline constexpr std::size_t kDefaultEfSearch = 50;

struct SearchHit {
    std::string id;
    double distance = 0;

    friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// Hierarchical Navigable Small World graph over unit vectors, cosine distance.
///
/// Build phase: insert() only. After freeze(): search() only, safe from many
/// threads. Calling the wrong one for the phase throws Error{Frozen} or
/// Error{NotFrozen}.
class HnswIndex {
public:
    explicit HnswIndex(HnswParams params = {});

    /// Throws Error{DuplicateId}, Error{DimensionMismatch}, Error{Frozen}.
    void insert(const std::string& id, const EmbeddingVector& vector);

    void freeze() noexcept { frozen_ = true; }
    [[nodiscard]] bool frozen() const noexcept { return frozen_; }

    /// Up to `k` hits sorted by (distance, id). With `ef_search` at least the
    /// index size every reachable node is scored, so results are exact.
    /// Throws Error{EmptyIndex}, Error{InvalidArgument} (k == 0 or ef_search < k).
    [[nodiscard]] std::vector<SearchHit> search(const EmbeddingVector& query, std::size_t k,
                                                std::size_t ef_search = kDefaultEfSearch) const;

    [[nodiscard]] const HnswParams& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] bool contains(const std::string& id) const { return by_id_.contains(id); }

    // Structure introspection, used by invariant checks.
    [[nodiscard]] int max_level() const noexcept { return max_level_; }
    [[nodiscard]] std::optional<std::uint32_t> entry_point() const noexcept { return entry_; }
    [[nodiscard]] int level_of(std::uint32_t node) const { return levels_.at(node); }
    [[nodiscard]] const std::string& id_of(std::uint32_t node) const { return ids_.at(node); }
    [[nodiscard]] const std::vector<std::uint32_t>& neighbors(std::uint32_t node, int level) const
    {
        return links_.at(node).at(static_cast<std::size_t>(level));
    }
    [[nodiscard]] EmbeddingVector vector_of(std::uint32_t node) const;
    [[nodiscard]] std::size_t max_degree(int level) const noexcept
    {
        return level == 0 ? 2 * params_.max_neighbors : params_.max_neighbors;
    }

    /// Degree caps, neighbor validity, entry point at the top level, and
    /// level-0 reachability of every node from the entry point.
    [[nodiscard]] bool check_invariants(std::string* problem = nullptr) const;

    /// Versioned little-endian binary encoding.
    [[nodiscard]] std::string serialize() const;
    /// Returns a frozen index. Throws Error{VersionMismatch} or Error{CorruptSnapshot}.
    static HnswIndex deserialize(std::string_view bytes);

    friend bool operator==(const HnswIndex& a, const HnswIndex& b)
    {
        return a.params_ == b.params_ && a.ids_ == b.ids_ && a.levels_ == b.levels_ &&
               a.data_ == b.data_ && a.links_ == b.links_ && a.entry_ == b.entry_ &&
               a.max_level_ == b.max_level_;
    }

private:
    using Candidate = std::pair<double, std::uint32_t>;

    [[nodiscard]] std::span<const double> data(std::uint32_t node) const
    {
        return {data_.data() + static_cast<std::size_t>(node) * params_.dimension, params_.dimension};
    }
    [[nodiscard]] double distance(std::span<const double> q, std::uint32_t node) const;
    [[nodiscard]] double distance(std::uint32_t a, std::uint32_t b) const;
    [[nodiscard]] int draw_level();
    [[nodiscard]] std::uint32_t greedy_closest(std::span<const double> q, std::uint32_t ep, int level) const;
    /// Beam search on one layer; returns candidates sorted ascending.
    [[nodiscard]] std::vector<Candidate> search_layer(std::span<const double> q, std::uint32_t ep,
                                                      std::size_t ef, int level) const;
    [[nodiscard]] std::vector<std::uint32_t> select_neighbors(const std::vector<Candidate>& sorted,
                                                              std::size_t m) const;

    HnswParams params_;
    double level_mult_;
    std::mt19937_64 rng_;
    std::vector<std::string> ids_;
    std::map<std::string, std::uint32_t> by_id_;
    std::vector<int> levels_;
    std::vector<double> data_;
    std::vector<std::vector<std::vector<std::uint32_t>>> links_;
    std::optional<std::uint32_t> entry_;
    int max_level_ = -1;
    bool frozen_ = false;
};

/// Exact scan with the same ordering as HnswIndex::search.
std::vector<SearchHit> brute_force_knn(std::span<const std::pair<std::string, EmbeddingVector>> items,
                                       const EmbeddingVector& query, std::size_t k);

void save_index(const HnswIndex& index, const std::filesystem::path& path);
HnswIndex load_index(const std::filesystem::path& path);

} // namespace legis::vector
