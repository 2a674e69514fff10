#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tlreg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, Eigen::Index rows, Eigen::Index cols)
        : std::runtime_error(what + " (" + std::to_string(rows) + "x" +
                             std::to_string(cols) + ")"),
          rows_(rows), cols_(cols) {}

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }

private:
    Eigen::Index rows_;
    Eigen::Index cols_;
};

} // namespace tlreg
