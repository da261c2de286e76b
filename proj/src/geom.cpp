#include "utamp/geom.hpp"

namespace utamp {

template Mat3T<double> rpy_to_matrix<double>(const RpyT<double>&);
template RpyT<double> matrix_to_rpy<double>(const Mat3T<double>&);
template RpyT<double> matrix_to_rpy_canonical<double>(const Mat3T<double>&);
template PoseT<double> compose<double>(const PoseT<double>&, const PoseT<double>&);
template PoseT<double> invert<double>(const PoseT<double>&);
template bool obb_overlap<double>(const OrientedBoxT<double>&, const OrientedBoxT<double>&, double);

}  // namespace utamp
