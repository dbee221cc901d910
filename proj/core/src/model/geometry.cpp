#include <algorithm>

#include "skg/propagation.hpp"

namespace skg::model {
namespace {

int orientation(Point2D a, Point2D b, Point2D c) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return (cross > 0.0) - (cross < 0.0);
}

// c is known to be collinear with a-b.
bool within_box(Point2D a, Point2D b, Point2D c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

}  // namespace

bool segment_crosses(Point2D a, Point2D b, const WallSegment& wall) {
    if (a == b) return false;
    const Point2D p = wall.from;
    const Point2D q = wall.to;
    const int o1 = orientation(a, b, p);
    const int o2 = orientation(a, b, q);
    const int o3 = orientation(p, q, a);
    const int o4 = orientation(p, q, b);

    if (o1 != o2 && o3 != o4) return true;
    // Collinear touches and overlaps.
    return (o1 == 0 && within_box(a, b, p)) || (o2 == 0 && within_box(a, b, q)) ||
           (o3 == 0 && within_box(p, q, a)) || (o4 == 0 && within_box(p, q, b));
}

std::vector<std::string> wall_crossings(Point2D a, Point2D b,
                                        std::span<const WallSegment> walls) {
    std::vector<std::string> crossed;
    for (const auto& wall : walls) {
        if (segment_crosses(a, b, wall)) crossed.push_back(wall.id);
    }
    return crossed;
}

bool line_of_sight(Point2D a, Point2D b, std::span<const WallSegment> walls) {
    return std::none_of(walls.begin(), walls.end(), [&](const WallSegment& wall) {
        return wall.opaque && segment_crosses(a, b, wall);
    });
}

}  // namespace skg::model
