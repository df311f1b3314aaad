#include "vocalis/report.hpp"

#include "vocalis/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace vocalis {

namespace {

constexpr const char* kPoetColor = "#2166ac";   // blue
constexpr const char* kOratorColor = "#b2182b"; // red

std::string format_fixed(long long scaled, int decimals) {
    const bool negative = scaled < 0;
    unsigned long long magnitude =
        negative ? -static_cast<unsigned long long>(scaled) : static_cast<unsigned long long>(scaled);
    unsigned long long pow10 = 1;
    for (int i = 0; i < decimals; ++i) {
        pow10 *= 10;
    }
    std::string out = negative ? "-" : "";
    out += std::to_string(magnitude / pow10);
    if (decimals > 0) {
        std::string fractional = std::to_string(magnitude % pow10);
        fractional.insert(0, static_cast<std::size_t>(decimals) - fractional.size(), '0');
        out += "." + fractional;
    }
    return out;
}

std::string svg_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Maps data coordinates to pixel coordinates (y axis flipped).
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    double px_lo = 0.0;
    double px_hi = 1.0;

    double map(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

void pad_range(double& lo, double& hi, double fraction) {
    if (hi <= lo) {
        const double center = lo;
        lo = center - 0.5;
        hi = center + 0.5;
        return;
    }
    const double pad = (hi - lo) * fraction;
    lo -= pad;
    hi += pad;
}

// Round tick step to 1/2/5 times a power of ten.
double tick_step(double range, int target_ticks) {
    const double raw = range / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            return mag * mult;
        }
    }
    return mag * 10.0;
}

void draw_ticks(std::ostringstream& svg, const Axis& x, const Axis& y) {
    const double xstep = tick_step(x.hi - x.lo, 6);
    for (double v = std::ceil(x.lo / xstep) * xstep; v <= x.hi + 1e-9; v += xstep) {
        const double px = x.map(v);
        svg << "<line x1='" << svg_num(px) << "' y1='" << svg_num(y.px_lo) << "' x2='"
            << svg_num(px) << "' y2='" << svg_num(y.px_lo + 5) << "' stroke='black'/>\n";
        svg << "<text x='" << svg_num(px) << "' y='" << svg_num(y.px_lo + 18)
            << "' font-size='11' text-anchor='middle'>" << svg_num(v) << "</text>\n";
    }
    const double ystep = tick_step(y.hi - y.lo, 6);
    for (double v = std::ceil(y.lo / ystep) * ystep; v <= y.hi + 1e-9; v += ystep) {
        const double py = y.map(v);
        svg << "<line x1='" << svg_num(x.px_lo) << "' y1='" << svg_num(py) << "' x2='"
            << svg_num(x.px_lo - 5) << "' y2='" << svg_num(py) << "' stroke='black'/>\n";
        svg << "<text x='" << svg_num(x.px_lo - 8) << "' y='" << svg_num(py + 4)
            << "' font-size='11' text-anchor='end'>" << svg_num(v) << "</text>\n";
    }
}

const char* category_color(Category category) {
    return category == Category::poet ? kPoetColor : kOratorColor;
}

} // namespace

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
    return out.str();
}

CsvTable CsvTable::parse(std::string_view text) {
    CsvTable table;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view line = text.substr(pos, end - pos);
        std::vector<std::string> fields;
        std::size_t fpos = 0;
        while (true) {
            const std::size_t comma = line.find(',', fpos);
            if (comma == std::string_view::npos) {
                fields.emplace_back(line.substr(fpos));
                break;
            }
            fields.emplace_back(line.substr(fpos, comma - fpos));
            fpos = comma + 1;
        }
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            if (fields.size() != table.header.size()) {
                throw ConfigError("CSV row has " + std::to_string(fields.size()) +
                                  " fields, header has " + std::to_string(table.header.size()));
            }
            table.rows.push_back(std::move(fields));
        }
        pos = end + 1;
    }
    if (first) {
        throw ConfigError("CSV text has no header row");
    }
    return table;
}

std::string percent_cell(std::uint64_t count, std::uint64_t total) {
    if (total == 0) {
        throw DataError("cannot compute a percentage with zero total");
    }
    // percent to 2 decimals, half-up, in exact integer arithmetic:
    // cents = round(10000 * count / total).
    const std::uint64_t cents = (20000 * count + total) / (2 * total);
    return format_fixed(static_cast<long long>(cents), 2);
}

std::string fixed_cell(double value, int decimals) {
    double pow10 = 1.0;
    for (int i = 0; i < decimals; ++i) {
        pow10 *= 10.0;
    }
    return format_fixed(std::llround(value * pow10), decimals);
}

CsvTable percentage_table(std::span<const DocumentStats> stats, SchemeKind scheme) {
    if (stats.empty()) {
        throw DataError("cannot emit a percentage table for an empty corpus");
    }
    for (const auto& doc : stats) {
        if (doc.tally.total == 0) {
            throw DataError("document " + doc.code + " has no letters");
        }
    }

    std::vector<const DocumentStats*> poets;
    std::vector<const DocumentStats*> orators;
    for (const auto& doc : stats) {
        (doc.category == Category::poet ? poets : orators).push_back(&doc);
    }

    LetterTally poet_all;
    LetterTally orator_all;
    auto accumulate = [](LetterTally& into, const LetterTally& from) {
        for (int i = 0; i < 26; ++i) {
            into.vowel_by_letter[i] += from.vowel_by_letter[i];
            into.consonant_by_letter[i] += from.consonant_by_letter[i];
        }
        into.vowels += from.vowels;
        into.consonants += from.consonants;
        into.total += from.total;
    };
    for (const auto* doc : poets) {
        accumulate(poet_all, doc->tally);
    }
    for (const auto* doc : orators) {
        accumulate(orator_all, doc->tally);
    }

    CsvTable table;
    table.header.push_back("row");
    for (const auto* doc : poets) {
        table.header.push_back(doc->code);
    }
    if (!poets.empty()) {
        table.header.push_back("all_poets");
    }
    for (const auto* doc : orators) {
        table.header.push_back(doc->code);
    }
    if (!orators.empty()) {
        table.header.push_back("all_orators");
    }

    auto emit_row = [&](const std::string& label, auto cell) {
        std::vector<std::string> row;
        row.push_back(label);
        for (const auto* doc : poets) {
            row.push_back(cell(doc->tally));
        }
        if (!poets.empty()) {
            row.push_back(cell(poet_all));
        }
        for (const auto* doc : orators) {
            row.push_back(cell(doc->tally));
        }
        if (!orators.empty()) {
            row.push_back(cell(orator_all));
        }
        table.rows.push_back(std::move(row));
    };

    if (scheme == SchemeKind::grammatical) {
        for (char letter : kVowelLetters) {
            emit_row(std::string(1, static_cast<char>(letter - 'a' + 'A')),
                     [letter](const LetterTally& t) {
                         return percent_cell(t.vowel_count(letter), t.total);
                     });
        }
    }
    emit_row("total", [](const LetterTally& t) { return percent_cell(t.vowels, t.total); });
    return table;
}

namespace {

ScatterPoint point_from_tally(std::string code, Category category, const LetterTally& t) {
    if (t.total == 0) {
        throw DataError("document " + code + " has no letters");
    }
    const double total = static_cast<double>(t.total);
    const double aey = static_cast<double>(t.vowel_count('a') + t.vowel_count('e') +
                                           t.vowel_count('y'));
    ScatterPoint p;
    p.code = std::move(code);
    p.category = category;
    p.x = 100.0 * aey / total;
    p.y = 100.0 * static_cast<double>(t.vowels) / total - p.x;
    return p;
}

} // namespace

std::vector<ScatterPoint> scatter_points(std::span<const DocumentStats> stats) {
    std::vector<ScatterPoint> points;
    points.reserve(stats.size());
    for (const auto& doc : stats) {
        points.push_back(point_from_tally(doc.code, doc.category, doc.tally));
    }
    return points;
}

std::vector<ScatterPoint> scatter_aggregates(std::span<const DocumentStats> stats) {
    LetterTally poet_all;
    LetterTally orator_all;
    bool has_poets = false;
    bool has_orators = false;
    for (const auto& doc : stats) {
        LetterTally& into = doc.category == Category::poet ? poet_all : orator_all;
        (doc.category == Category::poet ? has_poets : has_orators) = true;
        for (int i = 0; i < 26; ++i) {
            into.vowel_by_letter[i] += doc.tally.vowel_by_letter[i];
        }
        into.vowels += doc.tally.vowels;
        into.total += doc.tally.total;
    }
    std::vector<ScatterPoint> out;
    if (has_poets) {
        out.push_back(point_from_tally("poets", Category::poet, poet_all));
    }
    if (has_orators) {
        out.push_back(point_from_tally("orators", Category::orator, orator_all));
    }
    return out;
}

std::vector<GuideLine> claim_guides() {
    return {
        {100.0 * 7.0 / 16.0, "7/16", kPoetColor},
        {100.0 * 3.0 / 7.0, "3/7", kOratorColor},
    };
}

std::string render_scatter_svg(std::span<const ScatterPoint> points,
                               std::span<const ScatterPoint> aggregates,
                               std::span<const GuideLine> guides) {
    if (points.empty()) {
        throw DataError("cannot render a scatter plot without points");
    }

    double xlo = points[0].x, xhi = points[0].x;
    double ylo = points[0].y, yhi = points[0].y;
    auto include = [&](double px, double py) {
        xlo = std::min(xlo, px);
        xhi = std::max(xhi, px);
        ylo = std::min(ylo, py);
        yhi = std::max(yhi, py);
    };
    for (const auto& p : points) {
        include(p.x, p.y);
    }
    for (const auto& p : aggregates) {
        include(p.x, p.y);
    }
    pad_range(xlo, xhi, 0.10);
    for (const auto& g : guides) {
        ylo = std::min(ylo, g.total_percent - xhi);
        yhi = std::max(yhi, g.total_percent - xlo);
    }
    pad_range(ylo, yhi, 0.10);

    constexpr double width = 720;
    constexpr double height = 560;
    const Axis x{xlo, xhi, 70, width - 30};
    const Axis y{ylo, yhi, height - 60, 30}; // flipped

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    svg << "<rect x='" << svg_num(x.px_lo) << "' y='" << svg_num(y.px_hi) << "' width='"
        << svg_num(x.px_hi - x.px_lo) << "' height='" << svg_num(y.px_lo - y.px_hi)
        << "' fill='none' stroke='black'/>\n";
    draw_ticks(svg, x, y);
    svg << "<text x='" << svg_num((x.px_lo + x.px_hi) / 2) << "' y='" << svg_num(y.px_lo + 40)
        << "' font-size='13' text-anchor='middle'>a + e + y (percent of letters)</text>\n";
    svg << "<text x='16' y='" << svg_num((y.px_lo + y.px_hi) / 2)
        << "' font-size='13' text-anchor='middle' transform='rotate(-90 16 "
        << svg_num((y.px_lo + y.px_hi) / 2) << ")'>other vowels (percent of letters)</text>\n";

    for (const auto& g : guides) {
        const double y1 = g.total_percent - xlo;
        const double y2 = g.total_percent - xhi;
        svg << "<line x1='" << svg_num(x.map(xlo)) << "' y1='" << svg_num(y.map(y1)) << "' x2='"
            << svg_num(x.map(xhi)) << "' y2='" << svg_num(y.map(y2)) << "' stroke='" << g.color
            << "' stroke-dasharray='6 3'/>\n";
        svg << "<text x='" << svg_num(x.map(xlo) + 4) << "' y='" << svg_num(y.map(y1) - 4)
            << "' font-size='11' fill='" << g.color << "'>" << g.label << "</text>\n";
    }

    for (const auto& p : aggregates) {
        const double cx = x.map(p.x);
        const double cy = y.map(p.y);
        svg << "<line x1='" << svg_num(cx - 6) << "' y1='" << svg_num(cy) << "' x2='"
            << svg_num(cx + 6) << "' y2='" << svg_num(cy) << "' stroke='"
            << category_color(p.category) << "' stroke-width='2'/>\n";
        svg << "<line x1='" << svg_num(cx) << "' y1='" << svg_num(cy - 6) << "' x2='"
            << svg_num(cx) << "' y2='" << svg_num(cy + 6) << "' stroke='"
            << category_color(p.category) << "' stroke-width='2'/>\n";
    }

    for (const auto& p : points) {
        svg << "<text x='" << svg_num(x.map(p.x)) << "' y='" << svg_num(y.map(p.y))
            << "' font-size='12' font-weight='bold' text-anchor='middle' fill='"
            << category_color(p.category) << "'>" << p.code << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw DataError("cannot take a quantile of no data");
    }
    if (p <= 0.0) {
        return sorted.front();
    }
    if (p >= 1.0) {
        return sorted.back();
    }
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - std::floor(h);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BoxplotStats boxplot_stats(std::string code, Category category, std::vector<double> values) {
    if (values.size() < 5) {
        throw DataError("document " + code + ": boxplot needs at least five values, got " +
                        std::to_string(values.size()));
    }
    std::sort(values.begin(), values.end());
    BoxplotStats s;
    s.code = std::move(code);
    s.category = category;
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile_type7(values, 0.25);
    s.median = quantile_type7(values, 0.5);
    s.q3 = quantile_type7(values, 0.75);
    const double iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * iqr;
    const double hi_fence = s.q3 + 1.5 * iqr;
    s.whisker_low = *std::lower_bound(values.begin(), values.end(), lo_fence);
    auto above = std::upper_bound(values.begin(), values.end(), hi_fence);
    s.whisker_high = *std::prev(above == values.begin() ? values.end() : above);
    return s;
}

CsvTable boxplot_table(std::span<const BoxplotStats> stats) {
    CsvTable table;
    table.header = {"code",    "category", "min", "q1",          "median",
                    "q3",      "max",      "whisker_low", "whisker_high"};
    for (const auto& s : stats) {
        table.rows.push_back({s.code, std::string(to_string(s.category)), fixed_cell(s.min, 6),
                              fixed_cell(s.q1, 6), fixed_cell(s.median, 6), fixed_cell(s.q3, 6),
                              fixed_cell(s.max, 6), fixed_cell(s.whisker_low, 6),
                              fixed_cell(s.whisker_high, 6)});
    }
    return table;
}

std::string render_boxplot_svg(std::span<const BoxplotStats> stats, double poet_line,
                               double orator_line) {
    if (stats.empty()) {
        throw DataError("cannot render boxplots without data");
    }

    double lo = stats[0].whisker_low;
    double hi = stats[0].whisker_high;
    for (const auto& s : stats) {
        lo = std::min({lo, s.min, poet_line, orator_line});
        hi = std::max({hi, s.max, poet_line, orator_line});
    }
    pad_range(lo, hi, 0.08);

    constexpr double height = 460;
    const double slot = 42;
    const double width = 80 + slot * static_cast<double>(stats.size()) + 30;
    const Axis y{lo, hi, height - 50, 25};

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";

    // y ticks
    const double ystep = tick_step(hi - lo, 6);
    for (double v = std::ceil(lo / ystep) * ystep; v <= hi + 1e-12; v += ystep) {
        const double py = y.map(v);
        svg << "<line x1='75' y1='" << svg_num(py) << "' x2='80' y2='" << svg_num(py)
            << "' stroke='black'/>\n";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        svg << "<text x='70' y='" << svg_num(py + 4)
            << "' font-size='11' text-anchor='end'>" << buf << "</text>\n";
    }
    svg << "<line x1='80' y1='" << svg_num(y.px_hi) << "' x2='80' y2='" << svg_num(y.px_lo)
        << "' stroke='black'/>\n";

    // reference lines span the slots of their own category
    auto category_span = [&](Category category) {
        double first = -1, last = -1;
        for (std::size_t i = 0; i < stats.size(); ++i) {
            if (stats[i].category == category) {
                const double cx = 80 + slot * (static_cast<double>(i) + 0.5);
                if (first < 0) {
                    first = cx;
                }
                last = cx;
            }
        }
        return std::pair<double, double>(first, last);
    };
    for (auto [category, level] : {std::pair<Category, double>{Category::poet, poet_line},
                                   {Category::orator, orator_line}}) {
        const auto [first, last] = category_span(category);
        if (first < 0) {
            continue;
        }
        svg << "<line x1='" << svg_num(first - slot * 0.45) << "' y1='" << svg_num(y.map(level))
            << "' x2='" << svg_num(last + slot * 0.45) << "' y2='" << svg_num(y.map(level))
            << "' stroke='" << category_color(category) << "' stroke-dasharray='6 3'/>\n";
    }

    for (std::size_t i = 0; i < stats.size(); ++i) {
        const auto& s = stats[i];
        const double cx = 80 + slot * (static_cast<double>(i) + 0.5);
        const double half = slot * 0.3;
        const char* color = category_color(s.category);
        // whiskers
        svg << "<line x1='" << svg_num(cx) << "' y1='" << svg_num(y.map(s.whisker_low))
            << "' x2='" << svg_num(cx) << "' y2='" << svg_num(y.map(s.q1)) << "' stroke='"
            << color << "'/>\n";
        svg << "<line x1='" << svg_num(cx) << "' y1='" << svg_num(y.map(s.q3)) << "' x2='"
            << svg_num(cx) << "' y2='" << svg_num(y.map(s.whisker_high)) << "' stroke='" << color
            << "'/>\n";
        for (double w : {s.whisker_low, s.whisker_high}) {
            svg << "<line x1='" << svg_num(cx - half / 2) << "' y1='" << svg_num(y.map(w))
                << "' x2='" << svg_num(cx + half / 2) << "' y2='" << svg_num(y.map(w))
                << "' stroke='" << color << "'/>\n";
        }
        // box and median
        svg << "<rect x='" << svg_num(cx - half) << "' y='" << svg_num(y.map(s.q3)) << "' width='"
            << svg_num(2 * half) << "' height='" << svg_num(y.map(s.q1) - y.map(s.q3))
            << "' fill='none' stroke='" << color << "'/>\n";
        svg << "<line x1='" << svg_num(cx - half) << "' y1='" << svg_num(y.map(s.median))
            << "' x2='" << svg_num(cx + half) << "' y2='" << svg_num(y.map(s.median))
            << "' stroke='" << color << "' stroke-width='2'/>\n";
        svg << "<text x='" << svg_num(cx) << "' y='" << svg_num(y.px_lo + 18)
            << "' font-size='11' text-anchor='middle'>" << s.code << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

CsvTable sd_table(std::span<const SdRow> rows) {
    CsvTable table;
    table.header = {"code", "category", "reps", "mean", "sd"};
    for (const auto& row : rows) {
        table.rows.push_back({row.estimate.code, std::string(to_string(row.category)),
                              std::to_string(row.estimate.reps), fixed_cell(row.estimate.mean, 4),
                              fixed_cell(row.estimate.sd, 4)});
    }
    return table;
}

CsvTable power_table(std::span<const PowerEstimate> estimates) {
    CsvTable table;
    table.header = {"k", "test", "power_percent"};
    for (const auto& est : estimates) {
        table.rows.push_back({std::to_string(est.pages_per_document),
                              std::string(to_string(est.test_id)),
                              fixed_cell(est.power * 100.0, 2)});
    }
    return table;
}

} // namespace vocalis
