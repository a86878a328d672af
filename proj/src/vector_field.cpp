#include "rsane/vector_field.hpp"

namespace rsane {

double VectorField::merit(const Matrix& X) const { return 0.5 * eval(X).squaredNorm(); }

double VectorField::exact_sigma(const Matrix&, const Matrix&) const {
  throw CapabilityError("this field does not provide an exact sigma");
}

Matrix VectorField::merit_gradient(const Matrix&, const Matrix&) const {
  throw CapabilityError("this field does not provide a merit gradient");
}

}  // namespace rsane
