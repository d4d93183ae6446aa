#include "mmsa/warp_path.hpp"

#include <stdexcept>

#include "mmsa/seqio.hpp"

namespace mmsa {

bool is_valid(const AlignmentPath& path) {
    if (path.points.empty() || path.points.front() != Point{0, 0}) {
        return false;
    }
    for (size_t i = 1; i < path.points.size(); ++i) {
        int dx = path.points[i].x - path.points[i - 1].x;
        int dy = path.points[i].y - path.points[i - 1].y;
        bool step_ok = (dx == 1 && dy == 0) || (dx == 0 && dy == 1) || (dx == 1 && dy == 1);
        if (!step_ok) {
            return false;
        }
    }
    return true;
}

AlignmentPath path_from_alignment(const std::string& row_x, const std::string& row_y) {
    if (row_x.size() != row_y.size()) {
        throw std::invalid_argument("aligned rows differ in length");
    }
    AlignmentPath path;
    path.points.reserve(row_x.size() + 1);
    path.points.push_back({0, 0});
    for (size_t col = 0; col < row_x.size(); ++col) {
        Point next = path.points.back();
        bool gap_x = row_x[col] == kGap;
        bool gap_y = row_y[col] == kGap;
        if (gap_x && gap_y) {
            throw std::invalid_argument("alignment column " + std::to_string(col + 1) +
                                        " is gap-only");
        }
        if (!gap_x) {
            ++next.x;
        }
        if (!gap_y) {
            ++next.y;
        }
        path.points.push_back(next);
    }
    return path;
}

std::pair<std::string, std::string> alignment_from_path(const AlignmentPath& path,
                                                        std::string_view x,
                                                        std::string_view y) {
    if (!is_valid(path)) {
        throw std::invalid_argument("malformed alignment path");
    }
    if (path.n() != static_cast<int>(x.size()) || path.m() != static_cast<int>(y.size())) {
        throw std::invalid_argument("path endpoint does not match sequence lengths");
    }
    std::string row_x;
    std::string row_y;
    row_x.reserve(path.points.size() - 1);
    row_y.reserve(path.points.size() - 1);
    for (size_t i = 1; i < path.points.size(); ++i) {
        int dx = path.points[i].x - path.points[i - 1].x;
        int dy = path.points[i].y - path.points[i - 1].y;
        row_x.push_back(dx == 1 ? x[path.points[i].x - 1] : kGap);
        row_y.push_back(dy == 1 ? y[path.points[i].y - 1] : kGap);
    }
    return {std::move(row_x), std::move(row_y)};
}

AlignmentPath invert(const AlignmentPath& path) {
    AlignmentPath out;
    out.points.reserve(path.points.size());
    for (const Point& p : path.points) {
        out.points.push_back({p.y, p.x});
    }
    return out;
}

std::vector<StepCoords> all_step_coords(const AlignmentPath& path) {
    if (!is_valid(path)) {
        throw std::invalid_argument("malformed alignment path");
    }
    std::vector<StepCoords> coords;
    coords.reserve(path.n());
    for (size_t i = 1; i < path.points.size(); ++i) {
        if (path.points[i].x == path.points[i - 1].x) {
            continue;
        }
        coords.push_back({path.points[i].x, path.points[i - 1].y, path.points[i].y});
    }
    return coords;
}

StepCoords step_coords(const AlignmentPath& path, int u) {
    if (u < 1 || u > path.n()) {
        throw std::out_of_range("step position " + std::to_string(u) + " outside 1.." +
                                std::to_string(path.n()));
    }
    return all_step_coords(path)[u - 1];
}

AlignmentPath normalize_no_adjacent_indels(const AlignmentPath& path) {
    if (!is_valid(path)) {
        throw std::invalid_argument("malformed alignment path");
    }
    // Stack of steps; an indel pushed after its opposite fuses into (1,1).
    // A fused step never participates again, so one pass reaches the fixed
    // point of the rewrite.
    std::vector<Point> steps;
    steps.reserve(path.points.size());
    for (size_t i = 1; i < path.points.size(); ++i) {
        Point step{path.points[i].x - path.points[i - 1].x,
                   path.points[i].y - path.points[i - 1].y};
        if (!steps.empty() && step.x + steps.back().x == 1 && step.y + steps.back().y == 1 &&
            step.x + step.y == 1) {
            steps.back() = {1, 1};
        } else {
            steps.push_back(step);
        }
    }
    AlignmentPath out;
    out.points.reserve(steps.size() + 1);
    out.points.push_back({0, 0});
    for (const Point& step : steps) {
        out.points.push_back({out.points.back().x + step.x, out.points.back().y + step.y});
    }
    return out;
}

}  // namespace mmsa
