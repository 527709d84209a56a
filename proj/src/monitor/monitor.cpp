#include "legis/monitor/monitor.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"

#include <json.hpp>

#include <cmath>
#include <map>

namespace legis::monitor {

using graph::EdgeKind;
using graph::GraphStore;
using graph::NodeKind;
using nlohmann::json;

std::string_view to_string(SeriesMetric m) noexcept
{
    switch (m) {
    case SeriesMetric::LawsEnacted: return "laws_enacted";
    case SeriesMetric::InForceCount: return "in_force_count";
    case SeriesMetric::AvgOutgoingCitations: return "avg_outgoing_citations";
    case SeriesMetric::NewCitations: return "new_citations";
    }
    return "unknown";
}

std::string_view to_string(Granularity g) noexcept
{
    return g == Granularity::Year ? "year" : "month";
}

std::string_view to_string(Direction d) noexcept
{
    return d == Direction::In ? "in" : "out";
}

SeriesMetric parse_series_metric(std::string_view s)
{
    for (auto m : {SeriesMetric::LawsEnacted, SeriesMetric::InForceCount, SeriesMetric::AvgOutgoingCitations,
                   SeriesMetric::NewCitations})
        if (to_string(m) == s)
            return m;
    throw Error(ErrorCode::InvalidArgument, "unknown metric: " + std::string(s));
}

Granularity parse_granularity(std::string_view s)
{
    if (s == "year")
        return Granularity::Year;
    if (s == "month")
        return Granularity::Month;
    throw Error(ErrorCode::InvalidArgument, "granularity must be year or month, got " + std::string(s));
}

Direction parse_direction(std::string_view s)
{
    if (s == "in")
        return Direction::In;
    if (s == "out")
        return Direction::Out;
    throw Error(ErrorCode::InvalidArgument, "direction must be in or out, got " + std::string(s));
}

std::vector<Period> periods(Granularity g, Date from, Date to)
{
    if (from > to)
        throw Error(ErrorCode::InvalidRange, "from " + from.iso() + " is after to " + to.iso());
    std::vector<Period> out;
    Date start = g == Granularity::Year ? from.start_of_year() : from.start_of_month();
    while (start <= to) {
        const Date end = g == Granularity::Year ? start.end_of_year() : start.end_of_month();
        out.push_back({start, end});
        start = g == Granularity::Year ? start.next_year_start() : start.next_month_start();
    }
    return out;
}

namespace {

struct LawFacts {
    Date published;
    std::size_t cites_out = 0;
};

/// Non-stub dated laws with their aggregated CITES out-degree.
std::map<std::string, LawFacts> law_facts(const GraphStore& store)
{
    std::map<std::string, LawFacts> facts;
    for (const auto& [id, node] : store.nodes())
        if (node.kind == NodeKind::Law && !node.properties.stub && node.properties.publication_date)
            facts.emplace(id, LawFacts{*node.properties.publication_date, 0});
    for (const auto& [key, edge] : store.edges()) {
        if (edge.kind != EdgeKind::Cites)
            continue;
        const auto it = facts.find(store.owning_law(edge.src));
        if (it != facts.end())
            ++it->second.cites_out;
    }
    return facts;
}

} // namespace

TimeSeries timeseries(const GraphStore& store, SeriesMetric metric, Granularity granularity, Date from, Date to)
{
    const auto ps = periods(granularity, from, to);
    TimeSeries ts{metric, granularity, from, to, {}};
    const auto facts = metric == SeriesMetric::InForceCount ? std::map<std::string, LawFacts>{} : law_facts(store);
    for (const auto& p : ps) {
        double value = 0;
        switch (metric) {
        case SeriesMetric::LawsEnacted:
            for (const auto& [id, f] : facts)
                if (f.published >= p.start && f.published <= p.end)
                    value += 1;
            break;
        case SeriesMetric::InForceCount:
            value = static_cast<double>(store.in_force_laws(p.end).size());
            break;
        case SeriesMetric::AvgOutgoingCitations: {
            std::size_t laws = 0, cites = 0;
            for (const auto& [id, f] : facts) {
                if (f.published <= p.end) {
                    ++laws;
                    cites += f.cites_out;
                }
            }
            value = laws == 0 ? 0.0 : static_cast<double>(cites) / static_cast<double>(laws);
            break;
        }
        case SeriesMetric::NewCitations:
            for (const auto& [id, f] : facts)
                if (f.published >= p.start && f.published <= p.end)
                    value += static_cast<double>(f.cites_out);
            break;
        }
        ts.points.push_back({p.start, value});
    }
    return ts;
}

DegreeHistogram degree_distribution(const GraphStore& store, EdgeKind kind, Direction direction)
{
    std::map<std::string, std::size_t> degree;
    for (const auto& [id, node] : store.nodes()) {
        if (node.kind != NodeKind::Law)
            continue;
        if (direction == Direction::Out && node.properties.stub)
            continue;
        degree.emplace(id, 0);
    }
    for (const auto& [key, edge] : store.edges()) {
        if (edge.kind != kind)
            continue;
        const auto& end = direction == Direction::In ? edge.dst : edge.src;
        const std::string law = kind == EdgeKind::Cites ? store.owning_law(end) : end;
        const auto it = degree.find(law);
        if (it != degree.end())
            ++it->second;
    }
    std::map<std::size_t, std::size_t> bins;
    for (const auto& [id, d] : degree)
        ++bins[d];
    return {kind, direction, {bins.begin(), bins.end()}};
}

namespace {

json number(double v)
{
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9e15)
        return static_cast<std::int64_t>(v);
    return round_to(v);
}

} // namespace

std::string export_csv(const TimeSeries& series)
{
    std::string out = "period,value\n";
    for (const auto& p : series.points)
        out += p.period_start.iso() + "," + format_decimal(p.value) + "\n";
    return out;
}

std::string export_csv(const DegreeHistogram& histogram)
{
    std::string out = "degree,count\n";
    for (const auto& [d, c] : histogram.bins)
        out += std::to_string(d) + "," + std::to_string(c) + "\n";
    return out;
}

std::string export_json(const TimeSeries& series)
{
    json points = json::array();
    for (const auto& p : series.points)
        points.push_back({{"period_start", p.period_start.iso()}, {"value", number(p.value)}});
    return json{{"metric", to_string(series.metric)},
                {"granularity", to_string(series.granularity)},
                {"from", series.from.iso()},
                {"to", series.to.iso()},
                {"points", points}}
        .dump();
}

std::string export_json(const DegreeHistogram& histogram)
{
    json bins = json::array();
    for (const auto& [d, c] : histogram.bins)
        bins.push_back({{"degree", d}, {"count", c}});
    return json{{"kind", graph::to_string(histogram.kind)},
                {"direction", to_string(histogram.direction)},
                {"bins", bins}}
        .dump();
}

TimeSeries parse_timeseries_json(std::string_view text)
{
    try {
        const auto j = json::parse(text);
        TimeSeries ts;
        ts.metric = parse_series_metric(j.at("metric").get<std::string>());
        ts.granularity = parse_granularity(j.at("granularity").get<std::string>());
        ts.from = Date::parse(j.at("from").get<std::string>());
        ts.to = Date::parse(j.at("to").get<std::string>());
        for (const auto& p : j.at("points"))
            ts.points.push_back({Date::parse(p.at("period_start").get<std::string>()), p.at("value").get<double>()});
        return ts;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed time series: ") + e.what());
    }
}

DegreeHistogram parse_histogram_json(std::string_view text)
{
    try {
        const auto j = json::parse(text);
        DegreeHistogram h;
        h.kind = graph::parse_edge_kind(j.at("kind").get<std::string>());
        h.direction = parse_direction(j.at("direction").get<std::string>());
        for (const auto& b : j.at("bins"))
            h.bins.emplace_back(b.at("degree").get<std::size_t>(), b.at("count").get<std::size_t>());
        return h;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed histogram: ") + e.what());
    }
}

} // namespace legis::monitor
