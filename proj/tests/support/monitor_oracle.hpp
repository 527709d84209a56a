#pragma once

#include "legis/monitor/monitor.hpp"

#include "support/random_corpus.hpp"

namespace legis::testing {

/// Calendar periods enumerated one day at a time.
inline std::vector<std::pair<Date, Date>> oracle_periods(monitor::Granularity g, Date from, Date to)
{
    std::vector<std::pair<Date, Date>> out;
    const auto key = [g](Date d) { return g == monitor::Granularity::Year ? d.year() * 100 : d.year() * 100 + d.month(); };
    Date d = g == monitor::Granularity::Year ? Date(from.year(), 1, 1) : Date(from.year(), from.month(), 1);
    while (true) {
        Date start = d, end = d;
        while (true) {
            Date next = end.day() < days_in_month(end.year(), end.month())
                            ? Date(end.year(), end.month(), end.day() + 1)
                            : (end.month() < 12 ? Date(end.year(), end.month() + 1, 1) : Date(end.year() + 1, 1, 1));
            if (key(next) != key(start)) {
                d = next;
                break;
            }
            end = next;
        }
        out.emplace_back(start, end);
        if (end >= to)
            break;
    }
    return out;
}

inline std::vector<double> oracle_series(const ModelCorpus& c, monitor::SeriesMetric m, monitor::Granularity g,
                                         Date from, Date to)
{
    std::vector<double> out;
    for (const auto& [start, end] : oracle_periods(g, from, to)) {
        double v = 0;
        switch (m) {
        case monitor::SeriesMetric::LawsEnacted:
            for (const auto& l : c.laws)
                v += l.published >= start && l.published <= end;
            break;
        case monitor::SeriesMetric::InForceCount:
            v = static_cast<double>(oracle_in_force(c, end).size());
            break;
        case monitor::SeriesMetric::AvgOutgoingCitations: {
            double sum = 0, n = 0;
            for (const auto& l : c.laws)
                if (l.published <= end) {
                    sum += static_cast<double>(oracle_outgoing(l));
                    n += 1;
                }
            v = n == 0 ? 0 : sum / n;
            break;
        }
        case monitor::SeriesMetric::NewCitations:
            for (const auto& l : c.laws)
                if (l.published >= start && l.published <= end)
                    v += static_cast<double>(oracle_outgoing(l));
            break;
        }
        out.push_back(v);
    }
    return out;
}

} // namespace legis::testing
