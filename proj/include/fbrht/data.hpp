#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fbrht {

/// A labeled design: X is n x p with no intercept column, y holds 0/1
/// labels. feature_ids carry the 1-based identities features keep through
/// column drops and reductions; feature_names are optional display names.
struct Dataset {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<int> feature_ids;
    std::vector<std::string> feature_names;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols(); }
};

/// Column-wise location/scale transform fit on training data and replayable
/// on test data. Columns with zero variance are dropped and recorded.
struct Standardizer {
    std::vector<int> kept;       // original column indices, in output order
    std::vector<int> dropped;    // original column indices with zero variance
    std::vector<double> mean;    // per kept column
    std::vector<double> sd;      // per kept column, sample sd (n-1)

    /// Apply to a matrix with the same original column layout.
    Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
};

/// Center and scale every column to mean 0, sd 1 (sample sd). Returns the
/// transformed dataset (zero-variance columns removed, ids/names carried
/// over) and the fitted transform.
std::pair<Dataset, Standardizer> standardize(const Dataset& data);

/// Fill default ids 1..p and names "f1".."fp" if missing.
void ensure_feature_labels(Dataset& data);

/// Positions (0-based columns) of the given feature ids; throws if any id
/// is absent.
std::vector<int> columns_for_ids(const Dataset& data, const std::vector<int>& ids);

} // namespace fbrht
