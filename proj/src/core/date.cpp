#include "legis/core/date.hpp"

#include "legis/core/error.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace legis {

namespace {

bool parse_int(std::string_view s, int& out)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

int days_in_month(int year, int month) noexcept
{
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return kDays[month - 1];
}

bool Date::valid(int year, int month, int day) noexcept
{
    return year >= 1 && year <= 9999 && month >= 1 && month <= 12 && day >= 1 &&
           day <= days_in_month(year, month);
}

Date::Date(int year, int month, int day) : year_(year), month_(month), day_(day)
{
    if (!valid(year, month, day))
        throw Error(ErrorCode::InvalidArgument, "invalid calendar date");
}

Date Date::parse(std::string_view iso)
{
    int y = 0, m = 0, d = 0;
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-' || !parse_int(iso.substr(0, 4), y) ||
        !parse_int(iso.substr(5, 2), m) || !parse_int(iso.substr(8, 2), d) || !valid(y, m, d))
        throw Error(ErrorCode::InvalidArgument, "invalid date '" + std::string(iso) + "'");
    return {y, m, d};
}

Date Date::today()
{
    const auto now = std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now());
    const std::chrono::year_month_day ymd{now};
    return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month())),
            static_cast<int>(static_cast<unsigned>(ymd.day()))};
}

std::string Date::iso() const
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year_, month_, day_);
    return buf;
}

Date Date::end_of_month() const
{
    return {year_, month_, days_in_month(year_, month_)};
}

Date Date::next_month_start() const
{
    return month_ == 12 ? Date{year_ + 1, 1, 1} : Date{year_, month_ + 1, 1};
}

} // namespace legis
