#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace legis {

/// Calendar date (proleptic Gregorian), ISO-8601 `YYYY-MM-DD` on the wire.
class Date {
public:
    constexpr Date() = default;
    Date(int year, int month, int day);

    /// Throws Error{InvalidArgument} on anything but a valid `YYYY-MM-DD`.
    static Date parse(std::string_view iso);
    static bool valid(int year, int month, int day) noexcept;
    static Date today();

    [[nodiscard]] int year() const noexcept { return year_; }
    [[nodiscard]] int month() const noexcept { return month_; }
    [[nodiscard]] int day() const noexcept { return day_; }

    [[nodiscard]] std::string iso() const;

    [[nodiscard]] Date start_of_year() const { return {year_, 1, 1}; }
    [[nodiscard]] Date end_of_year() const { return {year_, 12, 31}; }
    [[nodiscard]] Date start_of_month() const { return {year_, month_, 1}; }
    [[nodiscard]] Date end_of_month() const;
    [[nodiscard]] Date next_month_start() const;
    [[nodiscard]] Date next_year_start() const { return {year_ + 1, 1, 1}; }

    friend constexpr auto operator<=>(const Date&, const Date&) = default;
    friend constexpr bool operator==(const Date&, const Date&) = default;

private:
    int year_ = 1970;
    int month_ = 1;
    int day_ = 1;
};

int days_in_month(int year, int month) noexcept;

} // namespace legis
