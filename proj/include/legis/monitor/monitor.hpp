#pragma once

#include "legis/core/date.hpp"
#include "legis/graph/graph_store.hpp"

#include <string>
#include <utility>
#include <vector>

namespace legis::monitor {

enum class SeriesMetric { LawsEnacted, InForceCount, AvgOutgoingCitations, NewCitations };
enum class Granularity { Year, Month };
enum class Direction { In, Out };

std::string_view to_string(SeriesMetric m) noexcept;
std::string_view to_string(Granularity g) noexcept;
std::string_view to_string(Direction d) noexcept;
/// Throw Error{InvalidArgument} on unknown names.
SeriesMetric parse_series_metric(std::string_view s);
Granularity parse_granularity(std::string_view s);
Direction parse_direction(std::string_view s);

struct Period {
    Date start;
    Date end; ///< inclusive

    friend bool operator==(const Period&, const Period&) = default;
};

/// Calendar-aligned periods covering [from, to]: the first starts at the
/// year/month of `from`, the last contains `to`. Throws Error{InvalidRange}.
std::vector<Period> periods(Granularity g, Date from, Date to);

struct SeriesPoint {
    Date period_start;
    double value = 0;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct TimeSeries {
    SeriesMetric metric = SeriesMetric::LawsEnacted;
    Granularity granularity = Granularity::Year;
    Date from;
    Date to;
    std::vector<SeriesPoint> points; ///< one per period, ascending

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// laws_enacted:           non-stub laws published in the period
/// in_force_count:         |in_force_laws(period end)|
/// avg_outgoing_citations: mean CITES out-degree (law plus its articles) of
///                         non-stub laws published up to period end; 0 if none
/// new_citations:          CITES edges whose source law is published in the period
/// Throws Error{InvalidRange}.
TimeSeries timeseries(const graph::GraphStore& store, SeriesMetric metric, Granularity granularity, Date from,
                      Date to);

struct DegreeHistogram {
    graph::EdgeKind kind = graph::EdgeKind::Cites;
    Direction direction = Direction::In;
    std::vector<std::pair<std::size_t, std::size_t>> bins; ///< (degree, law count), degree ascending

    friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;
};

/// Histogram over Law nodes. For CITES a law's degree includes the edges of
/// its articles. Stub laws count for in-degree only.
DegreeHistogram degree_distribution(const graph::GraphStore& store, graph::EdgeKind kind, Direction direction);

/// `period,value` rows; dates ISO, numbers via format_decimal.
std::string export_csv(const TimeSeries& series);
/// `degree,count` rows.
std::string export_csv(const DegreeHistogram& histogram);
/// Compact JSON; integral values are written as integers.
std::string export_json(const TimeSeries& series);
std::string export_json(const DegreeHistogram& histogram);
/// Throw Error{InvalidArgument} on malformed input.
TimeSeries parse_timeseries_json(std::string_view json);
DegreeHistogram parse_histogram_json(std::string_view json);

} // namespace legis::monitor
