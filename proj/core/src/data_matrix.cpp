#include "auvctl/data_matrix.hpp"

#include <sstream>

#include "auvctl/errors.hpp"

namespace auvctl {

Eigen::MatrixXd build_hankel(const Eigen::MatrixXd& seq, int r) {
    const Eigen::Index t = seq.rows();
    const Eigen::Index d = seq.cols();
    if (r < 1 || t < r) {
        std::ostringstream os;
        os << "build_hankel: need T >= r, got T = " << t << ", r = " << r;
        throw ConfigError(os.str());
    }
    const Eigen::Index c = t - r + 1;
    Eigen::MatrixXd h(static_cast<Eigen::Index>(r) * d, c);
    for (Eigen::Index j = 0; j < c; ++j) {
        for (int i = 0; i < r; ++i) {
            h.block(i * d, j, d, 1) = seq.row(j + i).transpose();
        }
    }
    return h;
}

Eigen::MatrixXd build_page(const Eigen::MatrixXd& seq, int r) {
    const Eigen::Index t = seq.rows();
    const Eigen::Index d = seq.cols();
    if (r < 1 || t < r) {
        std::ostringstream os;
        os << "build_page: need T >= r, got T = " << t << ", r = " << r;
        throw ConfigError(os.str());
    }
    const Eigen::Index c = t / r;
    Eigen::MatrixXd pm(static_cast<Eigen::Index>(r) * d, c);
    for (Eigen::Index j = 0; j < c; ++j) {
        for (int i = 0; i < r; ++i) {
            pm.block(i * d, j, d, 1) = seq.row(j * r + i).transpose();
        }
    }
    return pm;
}

DataBlocks partition(const Eigen::MatrixXd& u_data, const Eigen::MatrixXd& y_data,
                     const PartitionSpec& spec) {
    if (u_data.rows() != y_data.rows()) {
        throw ConfigError("partition: u and y sequences must have equal length");
    }
    if (spec.T_ini < 1 || spec.N < 1) {
        throw ConfigError("partition: horizons must be >= 1");
    }
    const int l = spec.T_ini + spec.N;
    const Eigen::Index t = u_data.rows();
    const Eigen::Index required =
        spec.kind == DataMatrixKind::Hankel
            ? static_cast<Eigen::Index>(l)
            : static_cast<Eigen::Index>(l) *
                  std::max<Eigen::Index>(1, spec.max_cols > 0 ? spec.max_cols : 1);
    if (t < required) {
        std::ostringstream os;
        os << "partition: insufficient data, need at least " << required
           << " samples, got " << t;
        throw ConfigError(os.str());
    }

    Eigen::MatrixXd u_mat, y_mat;
    if (spec.kind == DataMatrixKind::Hankel) {
        u_mat = build_hankel(u_data, l);
        y_mat = build_hankel(y_data, l);
    } else {
        u_mat = build_page(u_data, l);
        y_mat = build_page(y_data, l);
    }
    if (spec.max_cols > 0) {
        if (u_mat.cols() < spec.max_cols) {
            std::ostringstream os;
            os << "partition: insufficient data for " << spec.max_cols
               << " columns, need "
               << (spec.kind == DataMatrixKind::Hankel
                       ? static_cast<Eigen::Index>(spec.max_cols) + l - 1
                       : static_cast<Eigen::Index>(spec.max_cols) * l)
               << " samples, got " << t;
            throw ConfigError(os.str());
        }
        u_mat = u_mat.leftCols(spec.max_cols).eval();
        y_mat = y_mat.leftCols(spec.max_cols).eval();
    }

    DataBlocks b;
    b.T_ini = spec.T_ini;
    b.N = spec.N;
    b.m = static_cast<int>(u_data.cols());
    b.p = static_cast<int>(y_data.cols());
    b.kind = spec.kind;
    b.U_p = u_mat.topRows(static_cast<Eigen::Index>(spec.T_ini) * b.m);
    b.U_f = u_mat.bottomRows(static_cast<Eigen::Index>(spec.N) * b.m);
    b.Y_p = y_mat.topRows(static_cast<Eigen::Index>(spec.T_ini) * b.p);
    b.Y_f = y_mat.bottomRows(static_cast<Eigen::Index>(spec.N) * b.p);
    return b;
}

PersistencyReport persistency_report(const Eigen::MatrixXd& stacked) {
    PersistencyReport r;
    r.rows = stacked.rows();
    r.cols = stacked.cols();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    const auto& sv = svd.singularValues();
    const double tol = std::max(r.rows, r.cols) *
                       std::numeric_limits<double>::epsilon() *
                       (sv.size() > 0 ? sv(0) : 0.0);
    r.rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) ++r.rank;
    }
    const Eigen::Index k = std::min(r.rows, r.cols);
    r.sigma_min = k > 0 ? sv(k - 1) : 0.0;
    r.full_row_rank = r.rank == r.rows;
    return r;
}

} // namespace auvctl
