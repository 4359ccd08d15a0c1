#include "pcm/partition.hpp"

#include "pcm/errors.hpp"

#include <sstream>

namespace pcm {

const char* to_string(PriceOrder order) {
    return order == PriceOrder::ls_ge_wp ? "ls>=wp" : "ls<wp";
}

bool HalfPlane::contains(int size, IncentivePair p) const {
    switch (kind) {
        case Kind::at_most: return package_load(size, n, p) <= rhs;
        case Kind::above: return package_load(size, n, p) > rhs;
        case Kind::diagonal_ge: return p.r_ls >= p.r_wp;
        case Kind::diagonal_lt: return p.r_ls < p.r_wp;
    }
    return false;
}

Affine2 HalfPlane::as_lower_bound(int size) const {
    const double cw = n;
    const double cl = size - n;
    switch (kind) {
        case Kind::at_most: return {-rhs, -cw, -cl};
        case Kind::above: return {rhs, cw, cl};
        case Kind::diagonal_ge: return {0.0, -1.0, 1.0};
        case Kind::diagonal_lt: return {0.0, 1.0, -1.0};
    }
    return {};
}

std::string HalfPlane::describe(int size) const {
    std::ostringstream os;
    os.precision(10);
    switch (kind) {
        case Kind::at_most:
            os << n << "*R_WP + " << size - n << "*R_LS <= " << rhs;
            break;
        case Kind::above:
            os << n << "*R_WP + " << size - n << "*R_LS > " << rhs;
            break;
        case Kind::diagonal_ge: os << "R_LS >= R_WP"; break;
        case Kind::diagonal_lt: os << "R_LS < R_WP"; break;
    }
    return os.str();
}

bool SubSpace::contains(IncentivePair p) const {
    const int size = static_cast<int>(cb_table.size()) - 1;
    for (const auto& hp : half_planes)
        if (!hp.contains(size, p))
            return false;
    return true;
}

std::string SubSpace::name() const {
    std::ostringstream os;
    os << (order == PriceOrder::ls_ge_wp ? "F" : "Fbar") << "[" << n_sigma << "]";
    return os.str();
}

std::vector<BalancingSide> balancing_table(PriceOrder order, int n_sigma, int size) {
    // ls >= wp: totals grow with n, so the low-n block is long (down) and
    // the high-n block short (up). ls < wp mirrors it.
    const BalancingSide low = order == PriceOrder::ls_ge_wp ? BalancingSide::down : BalancingSide::up;
    const BalancingSide high = order == PriceOrder::ls_ge_wp ? BalancingSide::up : BalancingSide::down;
    std::vector<BalancingSide> table(static_cast<std::size_t>(size + 1));
    for (int n = 0; n <= size; ++n)
        table[static_cast<std::size_t>(n)] = n <= n_sigma ? low : high;
    return table;
}

Partition build_partition(const HourData& h) {
    using Kind = HalfPlane::Kind;
    Partition part;
    part.size = h.count();
    part.rhs = h.boundary_rhs();
    const int N = part.size;
    const double rhs = part.rhs;

    int id = 0;
    for (PriceOrder order : {PriceOrder::ls_ge_wp, PriceOrder::ls_lt_wp}) {
        const bool ge = order == PriceOrder::ls_ge_wp;
        // In ls>=wp the sign flips from long to short as n grows: cell
        // n_sigma has totals < 0 up to n_sigma and >= 0 after it.
        const Kind before = ge ? Kind::above : Kind::at_most;
        const Kind after = ge ? Kind::at_most : Kind::above;
        for (int ns = -1; ns <= N; ++ns) {
            SubSpace cell;
            cell.id = id++;
            cell.order = order;
            cell.n_sigma = ns;
            cell.half_planes.push_back({ge ? Kind::diagonal_ge : Kind::diagonal_lt, 0, 0.0});
            if (ns >= 0)
                cell.half_planes.push_back({before, ns, rhs});
            if (ns < N)
                cell.half_planes.push_back({after, ns + 1, rhs});
            cell.cb_table = balancing_table(order, ns, N);
            part.cells.push_back(std::move(cell));
        }
    }
    return part;
}

std::vector<BoundaryLine> boundary_lines(const Partition& partition) {
    std::vector<BoundaryLine> lines;
    for (int n = 0; n <= partition.size; ++n)
        lines.push_back({n, partition.rhs});
    return lines;
}

const SubSpace& classify(const Partition& partition, IncentivePair point) {
    for (const auto& cell : partition.cells)
        if (cell.contains(point))
            return cell;
    std::ostringstream os;
    os << "no sub-space contains (" << point.r_wp << ", " << point.r_ls << ")";
    throw NumericError(os.str(), 0.0);
}

std::string dump(const Partition& partition) {
    std::ostringstream os;
    os.precision(10);
    os << "partition N=" << partition.size << " rhs=" << partition.rhs << " cells="
       << partition.cells.size() << "\n";
    os << "lines:\n";
    for (const auto& line : boundary_lines(partition))
        os << "  n=" << line.n << ": " << line.n << "*R_WP + " << partition.size - line.n
           << "*R_LS = " << line.rhs << "\n";
    for (const auto& cell : partition.cells) {
        os << "cell " << cell.id << " " << cell.name() << " (" << to_string(cell.order) << ")\n";
        for (const auto& hp : cell.half_planes)
            os << "  " << hp.describe(partition.size) << "\n";
        os << "  C_B:";
        for (std::size_t n = 0; n < cell.cb_table.size(); ++n)
            os << " " << n << "=" << to_string(cell.cb_table[n]);
        os << "\n";
    }
    return os.str();
}

}  // namespace pcm
