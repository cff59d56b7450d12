#pragma once

#include <ostream>
#include <string_view>

namespace xcrush {

// Two renderings shared by the analysis and bench reports: a human-oriented
// text layout and a scriptable one-metric-per-line "name value" form.
enum class ReportFormat { Text, KeyValue };

inline void metric_line(std::ostream& os, ReportFormat fmt, std::string_view name,
                        std::string_view value) {
    if (fmt == ReportFormat::KeyValue) {
        os << name << ' ' << value << '\n';
    } else {
        os << "  " << name << ": " << value << '\n';
    }
}

} // namespace xcrush
