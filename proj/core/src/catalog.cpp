#include "monotone/catalog.hpp"

#include "monotone/errors.hpp"

namespace monotone {

std::vector<CatalogEntry> standard_catalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"identity1", OperatorSpec::linear(Matrix::identity(1))});
    out.push_back({"rotation2", OperatorSpec::linear(Matrix(2, {0.0, -1.0, 1.0, 0.0}))});
    out.push_back({"psd2", OperatorSpec::linear(Matrix(2, {1.0, -1.0, 1.0, 1.0}))});
    out.push_back({"box1", OperatorSpec::box_normal_cone(Vec{0.0}, Vec{1.0})});
    out.push_back({"box2", OperatorSpec::box_normal_cone(Vec{0.0, 0.0}, Vec{1.0, 1.0})});
    out.push_back({"normsub2", OperatorSpec::norm_subdiff(1.5, Vec{0.3, -0.2})});
    out.push_back({"sqrt1p2", OperatorSpec::smooth_gradient(SmoothKind::Sqrt1p, 2)});
    return out;
}

std::vector<CatalogEntry> probe_catalog() {
    std::vector<CatalogEntry> out;
    out.push_back({"box1", OperatorSpec::box_normal_cone(Vec{0.0}, Vec{1.0})});
    out.push_back({"identity1", OperatorSpec::linear(Matrix::identity(1))});
    out.push_back({"normsub1", OperatorSpec::norm_subdiff(1.0, Vec{0.0})});
    return out;
}

OperatorSpec catalog_operator(const std::string& id) {
    for (const auto& e : standard_catalog())
        if (e.id == id) return e.op;
    for (const auto& e : probe_catalog())
        if (e.id == id) return e.op;
    if (id == "sqrt1p1") return OperatorSpec::smooth_gradient(SmoothKind::Sqrt1p, 1);
    throw InvalidInputError("catalog_operator: unknown id '" + id + "'");
}

}  // namespace monotone
