#include "legis/vector/hnsw.hpp"

#include "legis/core/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

namespace legis::vector {

namespace {

constexpr std::string_view kMagic = "LGHNSW01";
constexpr std::uint32_t kFormatVersion = 1;
constexpr int kMaxLevel = 16;

class Writer {
public:
    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i)
            out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void u64(std::uint64_t v)
    {
        for (int i = 0; i < 8; ++i)
            out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void bytes(std::string_view s) { out_.append(s); }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view in) : in_(in) {}
    std::uint64_t uint(int width)
    {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + static_cast<std::size_t>(i)]))
                 << (8 * i);
        pos_ += static_cast<std::size_t>(width);
        return v;
    }
    std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
    std::uint64_t u64() { return uint(8); }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string_view bytes(std::size_t n)
    {
        need(n);
        auto s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    [[nodiscard]] bool done() const { return pos_ == in_.size(); }

private:
    void need(std::size_t n) const
    {
        if (in_.size() - pos_ < n)
            throw Error(ErrorCode::CorruptSnapshot, "index snapshot truncated");
    }
    std::string_view in_;
    std::size_t pos_ = 0;
};

} // namespace

HnswIndex::HnswIndex(HnswParams params)
    : params_(params), rng_(params.seed)
{
    if (params_.dimension == 0)
        throw Error(ErrorCode::InvalidArgument, "index dimension must be positive");
    if (params_.max_neighbors < 2)
        throw Error(ErrorCode::InvalidArgument, "max_neighbors must be at least 2");
    if (params_.ef_construction == 0)
        throw Error(ErrorCode::InvalidArgument, "ef_construction must be positive");
    level_mult_ = 1.0 / std::log(static_cast<double>(params_.max_neighbors));
}

double HnswIndex::distance(std::span<const double> q, std::uint32_t node) const
{
    return 1.0 - dot(q, data(node));
}

double HnswIndex::distance(std::uint32_t a, std::uint32_t b) const
{
    return 1.0 - dot(data(a), data(b));
}

int HnswIndex::draw_level()
{
    const double u = static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
    const double level = std::floor(-std::log(u) * level_mult_);
    return static_cast<int>(std::min(level, static_cast<double>(kMaxLevel)));
}

EmbeddingVector HnswIndex::vector_of(std::uint32_t node) const
{
    const auto d = data(node);
    return EmbeddingVector::normalized({d.begin(), d.end()});
}

std::uint32_t HnswIndex::greedy_closest(std::span<const double> q, std::uint32_t ep, int level) const
{
    double best = distance(q, ep);
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::uint32_t n : links_[ep][static_cast<std::size_t>(level)]) {
            const double d = distance(q, n);
            if (d < best || (d == best && n < ep)) {
                best = d;
                ep = n;
                moved = true;
            }
        }
    }
    return ep;
}

std::vector<HnswIndex::Candidate> HnswIndex::search_layer(std::span<const double> q, std::uint32_t ep,
                                                          std::size_t ef, int level) const
{
    std::vector<char> visited(ids_.size(), 0);
    std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> frontier;
    std::priority_queue<Candidate> best;
    const Candidate start{distance(q, ep), ep};
    frontier.push(start);
    best.push(start);
    visited[ep] = 1;
    while (!frontier.empty()) {
        const Candidate c = frontier.top();
        if (best.size() >= ef && c > best.top())
            break;
        frontier.pop();
        for (std::uint32_t n : links_[c.second][static_cast<std::size_t>(level)]) {
            if (visited[n])
                continue;
            visited[n] = 1;
            const Candidate cand{distance(q, n), n};
            if (best.size() < ef || cand < best.top()) {
                frontier.push(cand);
                best.push(cand);
                if (best.size() > ef)
                    best.pop();
            }
        }
    }
    std::vector<Candidate> out;
    out.reserve(best.size());
    while (!best.empty()) {
        out.push_back(best.top());
        best.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> HnswIndex::select_neighbors(const std::vector<Candidate>& sorted, std::size_t m) const
{
    std::vector<std::uint32_t> chosen;
    std::vector<std::uint32_t> pruned;
    for (const auto& [dist, node] : sorted) {
        if (chosen.size() >= m)
            break;
        bool diverse = true;
        for (std::uint32_t r : chosen) {
            if (distance(node, r) < dist) {
                diverse = false;
                break;
            }
        }
        (diverse ? chosen : pruned).push_back(node);
    }
    for (std::size_t i = 0; i < pruned.size() && chosen.size() < m; ++i)
        chosen.push_back(pruned[i]);
    return chosen;
}

void HnswIndex::insert(const std::string& id, const EmbeddingVector& vector)
{
    if (frozen_)
        throw Error(ErrorCode::Frozen, "index is frozen");
    if (vector.dimension() != params_.dimension)
        throw Error(ErrorCode::DimensionMismatch, "expected dimension " + std::to_string(params_.dimension) +
                                                      ", got " + std::to_string(vector.dimension()));
    if (by_id_.contains(id))
        throw Error(ErrorCode::DuplicateId, "duplicate index id: " + id);

    const auto node = static_cast<std::uint32_t>(ids_.size());
    const int level = draw_level();
    ids_.push_back(id);
    by_id_.emplace(id, node);
    levels_.push_back(level);
    data_.insert(data_.end(), vector.values().begin(), vector.values().end());
    links_.emplace_back(static_cast<std::size_t>(level) + 1);

    if (!entry_) {
        entry_ = node;
        max_level_ = level;
        return;
    }

    const auto q = data(node);
    std::uint32_t ep = *entry_;
    for (int lc = max_level_; lc > level; --lc)
        ep = greedy_closest(q, ep, lc);

    for (int lc = std::min(level, max_level_); lc >= 0; --lc) {
        const auto found = search_layer(q, ep, params_.ef_construction, lc);
        const auto lvl = static_cast<std::size_t>(lc);
        links_[node][lvl] = select_neighbors(found, params_.max_neighbors);
        for (std::uint32_t e : links_[node][lvl]) {
            auto& back = links_[e][lvl];
            back.push_back(node);
            if (back.size() > max_degree(lc)) {
                std::vector<Candidate> cands;
                cands.reserve(back.size());
                for (std::uint32_t b : back)
                    cands.emplace_back(distance(e, b), b);
                std::sort(cands.begin(), cands.end());
                back = select_neighbors(cands, max_degree(lc));
            }
        }
        ep = found.front().second;
    }

    if (level > max_level_) {
        max_level_ = level;
        entry_ = node;
    }
}

std::vector<SearchHit> HnswIndex::search(const EmbeddingVector& query, std::size_t k, std::size_t ef_search) const
{
    if (!frozen_)
        throw Error(ErrorCode::NotFrozen, "index must be frozen before search");
    if (k == 0)
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    if (ef_search < k)
        throw Error(ErrorCode::InvalidArgument, "ef_search must be at least k");
    if (query.dimension() != params_.dimension)
        throw Error(ErrorCode::DimensionMismatch, "query dimension differs from index");
    if (!entry_)
        throw Error(ErrorCode::EmptyIndex, "index is empty");

    const auto q = query.values();
    std::uint32_t ep = *entry_;
    for (int lc = max_level_; lc > 0; --lc)
        ep = greedy_closest(q, ep, lc);
    const auto found = search_layer(q, ep, ef_search, 0);

    std::vector<SearchHit> hits;
    hits.reserve(found.size());
    for (const auto& [dist, node] : found)
        hits.push_back({ids_[node], std::clamp(dist, 0.0, 2.0)});
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
    if (hits.size() > k)
        hits.resize(k);
    return hits;
}

bool HnswIndex::check_invariants(std::string* problem) const
{
    const auto fail = [&](std::string msg) {
        if (problem)
            *problem = std::move(msg);
        return false;
    };
    if (ids_.empty())
        return entry_ ? fail("entry point set on empty index") : true;
    if (!entry_ || *entry_ >= ids_.size())
        return fail("missing entry point");
    if (levels_[*entry_] != max_level_)
        return fail("entry point is not on the top level");
    for (std::uint32_t node = 0; node < ids_.size(); ++node) {
        if (levels_[node] > max_level_)
            return fail("node above max level: " + ids_[node]);
        for (int lc = 0; lc <= levels_[node]; ++lc) {
            const auto& ns = links_[node][static_cast<std::size_t>(lc)];
            if (ns.size() > max_degree(lc))
                return fail("degree cap exceeded at " + ids_[node]);
            for (std::uint32_t n : ns) {
                if (n >= ids_.size() || n == node)
                    return fail("invalid neighbor at " + ids_[node]);
                if (levels_[n] < lc)
                    return fail("neighbor below layer at " + ids_[node]);
            }
        }
    }
    std::vector<char> seen(ids_.size(), 0);
    std::vector<std::uint32_t> stack{*entry_};
    seen[*entry_] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto n = stack.back();
        stack.pop_back();
        for (std::uint32_t m : links_[n][0]) {
            if (!seen[m]) {
                seen[m] = 1;
                ++reached;
                stack.push_back(m);
            }
        }
    }
    if (reached != ids_.size())
        return fail(std::to_string(ids_.size() - reached) + " nodes unreachable on level 0");
    return true;
}

std::string HnswIndex::serialize() const
{
    Writer w;
    w.bytes(kMagic);
    w.u32(kFormatVersion);
    w.u64(params_.dimension);
    w.u64(params_.max_neighbors);
    w.u64(params_.ef_construction);
    w.u64(params_.seed);
    w.u64(ids_.size());
    w.u64(entry_ ? *entry_ : ~std::uint64_t{0});
    w.u32(static_cast<std::uint32_t>(max_level_ + 1));
    for (std::uint32_t node = 0; node < ids_.size(); ++node) {
        w.u32(static_cast<std::uint32_t>(ids_[node].size()));
        w.bytes(ids_[node]);
        w.u32(static_cast<std::uint32_t>(levels_[node]));
        for (double v : data(node))
            w.f64(v);
        for (const auto& layer : links_[node]) {
            w.u32(static_cast<std::uint32_t>(layer.size()));
            for (std::uint32_t n : layer)
                w.u32(n);
        }
    }
    return w.take();
}

HnswIndex HnswIndex::deserialize(std::string_view bytes)
{
    Reader r(bytes);
    if (r.bytes(kMagic.size()) != kMagic)
        throw Error(ErrorCode::CorruptSnapshot, "not an index snapshot");
    if (const auto version = r.u32(); version != kFormatVersion)
        throw Error(ErrorCode::VersionMismatch, "unsupported index format version " + std::to_string(version));
    HnswParams p;
    p.dimension = r.u64();
    p.max_neighbors = r.u64();
    p.ef_construction = r.u64();
    p.seed = r.u64();
    if (p.dimension == 0 || p.dimension > (1u << 20) || p.max_neighbors < 2 || p.ef_construction == 0)
        throw Error(ErrorCode::CorruptSnapshot, "invalid index parameters");
    HnswIndex index(p);
    const std::uint64_t n = r.u64();
    const std::uint64_t entry = r.u64();
    index.max_level_ = static_cast<int>(r.u32()) - 1;
    if (n > bytes.size())
        throw Error(ErrorCode::CorruptSnapshot, "implausible node count");
    for (std::uint64_t node = 0; node < n; ++node) {
        std::string id(r.bytes(r.u32()));
        const auto level = r.u32();
        if (level > static_cast<std::uint32_t>(kMaxLevel))
            throw Error(ErrorCode::CorruptSnapshot, "invalid node level");
        for (std::size_t i = 0; i < p.dimension; ++i)
            index.data_.push_back(r.f64());
        std::vector<std::vector<std::uint32_t>> layers(level + 1);
        for (auto& layer : layers) {
            const auto count = r.u32();
            if (count > 2 * p.max_neighbors)
                throw Error(ErrorCode::CorruptSnapshot, "neighbor list too long");
            for (std::uint32_t i = 0; i < count; ++i)
                layer.push_back(r.u32());
        }
        if (!index.by_id_.emplace(id, static_cast<std::uint32_t>(node)).second)
            throw Error(ErrorCode::CorruptSnapshot, "duplicate id in snapshot: " + id);
        index.ids_.push_back(std::move(id));
        index.levels_.push_back(static_cast<int>(level));
        index.links_.push_back(std::move(layers));
    }
    if (!r.done())
        throw Error(ErrorCode::CorruptSnapshot, "trailing bytes in index snapshot");
    if (n > 0) {
        if (entry >= n)
            throw Error(ErrorCode::CorruptSnapshot, "invalid entry point");
        index.entry_ = static_cast<std::uint32_t>(entry);
    }
    std::string problem;
    if (!index.check_invariants(&problem))
        throw Error(ErrorCode::CorruptSnapshot, "index snapshot violates invariants: " + problem);
    index.frozen_ = true;
    return index;
}

std::vector<SearchHit> brute_force_knn(std::span<const std::pair<std::string, EmbeddingVector>> items,
                                       const EmbeddingVector& query, std::size_t k)
{
    if (k == 0)
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    std::vector<SearchHit> hits;
    hits.reserve(items.size());
    for (const auto& [id, v] : items) {
        if (v.dimension() != query.dimension())
            throw Error(ErrorCode::DimensionMismatch, "item dimension differs from query");
        hits.push_back({id, std::clamp(1.0 - dot(query.values(), v.values()), 0.0, 2.0)});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
    });
    if (hits.size() > k)
        hits.resize(k);
    return hits;
}

void save_index(const HnswIndex& index, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    const auto bytes = index.serialize();
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

HnswIndex load_index(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return HnswIndex::deserialize(ss.str());
}

} // namespace legis::vector
