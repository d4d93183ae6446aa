#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmsa {

struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Increasing lattice path from (0,0) to (n,m) with steps (1,0), (0,1) and
// (1,1). Step (1,0) is a column consuming x only, (0,1) consumes y only,
// (1,1) consumes both. One path corresponds to one pairwise alignment.
struct AlignmentPath {
    std::vector<Point> points;

    int n() const { return points.empty() ? 0 : points.back().x; }
    int m() const { return points.empty() ? 0 : points.back().y; }
    int size() const { return static_cast<int>(points.size()); }

    friend bool operator==(const AlignmentPath&, const AlignmentPath&) = default;
};

// The unique step of a path that advances the first coordinate from u-1 to
// u: the path contains consecutive points (u-1,v1),(u,v2), with v2 equal to
// v1 or v1+1. Positions u are 1-based.
struct StepCoords {
    int u = 0;
    int v1 = 0;
    int v2 = 0;

    friend bool operator==(const StepCoords&, const StepCoords&) = default;
};

bool is_valid(const AlignmentPath& path);

// Path of the alignment given as two gapped rows of equal length. A column
// with gaps in both rows is rejected.
AlignmentPath path_from_alignment(const std::string& row_x, const std::string& row_y);

// Gapped rows for the ungapped sequences x and y under the given path.
std::pair<std::string, std::string> alignment_from_path(const AlignmentPath& path,
                                                        std::string_view x,
                                                        std::string_view y);

// Path of the transposed alignment: every point (x,y) becomes (y,x).
AlignmentPath invert(const AlignmentPath& path);

// Step coordinates at one position, or at every position 1..n in order.
StepCoords step_coords(const AlignmentPath& path, int u);
std::vector<StepCoords> all_step_coords(const AlignmentPath& path);

// Rewrites every pair of adjacent opposite indel columns as one substitution
// column until none remain. Path endpoints are unchanged.
AlignmentPath normalize_no_adjacent_indels(const AlignmentPath& path);

}  // namespace mmsa
