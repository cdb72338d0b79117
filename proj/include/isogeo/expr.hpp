#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>

#include "isogeo/errors.hpp"

namespace isogeo {

struct ExprError : Error {
    using Error::Error;
};

/**
 * A small arithmetic expression over chart variables, for graph surfaces
 * defined in plain text. Supports numbers, identifiers u1..u9 (aliases x, y
 * for u1, u2), + - * / ^, parentheses, unary minus, the functions sin cos
 * tan exp log sqrt sinh cosh tanh abs, and the constants pi, e.
 */
class Expr {
  public:
    static Expr parse(const std::string& text);

    double eval(const Eigen::VectorXd& u) const;

    // Convenience adapter for scalar-field consumers.
    std::function<double(const Eigen::VectorXd&)> as_field() const;

  private:
    struct Node;
    std::shared_ptr<const Node> root_;
};

} // namespace isogeo
