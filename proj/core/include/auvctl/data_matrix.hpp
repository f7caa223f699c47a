#pragma once

#include <Eigen/Dense>

namespace auvctl {

enum class DataMatrixKind { Hankel, Page };

/// Past/future partitioned data blocks for DeePC. All four blocks share the
/// same column count; rows follow the (T_ini + N)-block stacking.
struct DataBlocks {
    Eigen::MatrixXd U_p, Y_p, U_f, Y_f;
    int T_ini = 0;
    int N = 0;
    int m = 0; // input dimension
    int p = 0; // output dimension
    DataMatrixKind kind = DataMatrixKind::Hankel;

    Eigen::Index cols() const { return U_p.cols(); }
};

/// Block Hankel matrix with r block rows: column j stacks samples
/// j .. j+r-1. seq is T x d (one sample per row).
Eigen::MatrixXd build_hankel(const Eigen::MatrixXd& seq, int r);

/// Page matrix with r block rows: column j stacks samples (j-1)r+1 .. jr;
/// trailing remainder samples are dropped.
Eigen::MatrixXd build_page(const Eigen::MatrixXd& seq, int r);

struct PartitionSpec {
    int T_ini = 0;
    int N = 0;
    DataMatrixKind kind = DataMatrixKind::Hankel;
    /// If > 0, keep only the first max_cols columns of the built matrices.
    int max_cols = 0;
};

/// Build the (T_ini+N)-block-row data matrices from aligned input/output
/// sequences and split into past/future blocks.
DataBlocks partition(const Eigen::MatrixXd& u_data, const Eigen::MatrixXd& y_data,
                     const PartitionSpec& spec);

struct PersistencyReport {
    Eigen::Index rank = 0;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    double sigma_min = 0.0;
    bool full_row_rank = false;
};

/// Numerical rank (SVD threshold) and smallest singular value of a stacked
/// data matrix; full row rank is the persistency-of-excitation pass signal.
PersistencyReport persistency_report(const Eigen::MatrixXd& stacked);

} // namespace auvctl
