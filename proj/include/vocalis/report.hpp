#pragma once

#include "vocalis/classify.hpp"
#include "vocalis/corpus.hpp"
#include "vocalis/mc.hpp"
#include "vocalis/stats.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vocalis {

// Minimal CSV: comma delimiter, dot decimal separator, header row, no
// quoting (fields never contain commas or newlines).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    static CsvTable parse(std::string_view text); // throws ConfigError on ragged rows
};

// Rounds half-up to two decimals, exactly, from integer counts:
// percent = 100 * count / total.
std::string percent_cell(std::uint64_t count, std::uint64_t total);

// Rounds half-up at `decimals` fractional digits (used for non-rational
// quantities such as standard deviations).
std::string fixed_cell(double value, int decimals);

struct DocumentStats {
    std::string code;
    Category category = Category::poet;
    LetterTally tally;
};

// Percentage-of-vowels table: one column per document code plus an "All"
// aggregate per category (poets first). The grammatical scheme emits
// per-letter rows A,E,I,O,U,Y plus a total row; other schemes emit the total
// row only. Throws DataError on an empty corpus.
CsvTable percentage_table(std::span<const DocumentStats> stats, SchemeKind scheme);

struct ScatterPoint {
    std::string code;
    double x = 0.0; // cumulated percent of a, e, y (vowel class)
    double y = 0.0; // cumulated percent of the other vowel-class letters
    Category category = Category::poet;
};

// Per-document scatter coordinates; x + y equals the document's vowel
// percent exactly.
std::vector<ScatterPoint> scatter_points(std::span<const DocumentStats> stats);

// Category aggregates (pooled counts) as extra scatter markers.
std::vector<ScatterPoint> scatter_aggregates(std::span<const DocumentStats> stats);

struct GuideLine {
    double total_percent = 0.0; // renders the line x + y = total_percent
    std::string label;
    std::string color;
};

// The two guides of the vowel-share claims: x+y=7/16 (poets, blue) and
// x+y=3/7 (orators, red), in percent.
std::vector<GuideLine> claim_guides();

// Scatter plot, one text element per document code; poets blue, orators
// red; aggregate crosses; axes in percent. Throws DataError when empty.
std::string render_scatter_svg(std::span<const ScatterPoint> points,
                               std::span<const ScatterPoint> aggregates,
                               std::span<const GuideLine> guides);

struct BoxplotStats {
    std::string code;
    Category category = Category::poet;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    double whisker_low = 0.0;  // smallest value >= q1 - 1.5*IQR
    double whisker_high = 0.0; // largest value <= q3 + 1.5*IQR
};

// Linear interpolation between order statistics (the common "type 7" rule).
// `sorted` must be ascending and nonempty; 0 <= p <= 1.
double quantile_type7(std::span<const double> sorted, double p);

// Five-number summary with 1.5*IQR whiskers. Throws DataError when fewer
// than five values.
BoxplotStats boxplot_stats(std::string code, Category category, std::vector<double> values);

CsvTable boxplot_table(std::span<const BoxplotStats> stats);

// Boxplots per document with horizontal reference lines at the claimed
// proportions: 7/16 over the poet group, 3/7 over the orators.
std::string render_boxplot_svg(std::span<const BoxplotStats> stats, double poet_line,
                               double orator_line);

struct SdRow {
    SdEstimate estimate;
    Category category = Category::poet;
};

CsvTable sd_table(std::span<const SdRow> rows);

CsvTable power_table(std::span<const PowerEstimate> estimates);

} // namespace vocalis
