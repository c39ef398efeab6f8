#ifndef SYNTO_CHART_HPP
#define SYNTO_CHART_HPP

#include <string>
#include <vector>

#include "synto/instances.hpp"

namespace synto::chart {

struct ChartSpec {
    int x_lo = 0, x_hi = 0;  // degree columns
    int y_lo = 0, y_hi = 0;  // Adams-weight rows
    bool full_labels = true;  // false: one mark character / dot per class

    // Tight axes around the basis, padded by one cell on each side.
    static ChartSpec fit(const inst::BigradedBasis& basis);
};

struct DiffRecord {
    int page = 0;
    alg::Bidegree source, target;
    std::size_t rank = 0;
};

std::vector<DiffRecord> diff_records(const std::vector<eng::LogEntry>& log,
                                     const eng::Shift& shift);

// Fixed-width UTF-8 grid, one row per Adams weight (top row = highest weight),
// one column per degree; colliding classes are comma-joined in label order.
std::string render_text(const inst::BigradedBasis& basis, const ChartSpec& spec);

// SVG 1.1 document with integer coordinates: grid lines, axis ticks, one text
// node per class; collisions stack above/below the cell center in label order.
std::string render_svg(const inst::BigradedBasis& basis, const ChartSpec& spec);

// {p, n, window, classes: [{label, degree, adams_weight, filtration?, piece?}],
// differentials?: [{page, source, target, rank}]} with stable key order.
std::string render_json(const inst::BigradedBasis& basis,
                        const std::vector<DiffRecord>& differentials = {});

// Inverse of render_json on the basis part; render_json(parse_json(s)) == s
// for dumps without differentials.
inst::BigradedBasis parse_json(const std::string& text);

}  // namespace synto::chart

#endif
