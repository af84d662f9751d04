#include "gopw/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace gopw {

MeshPartition::MeshPartition(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("element counts must be >= 1");
  const double hx = 1.0 / nx;
  const double hy = 1.0 / ny;
  h_ = std::max(hx, hy);

  elements_.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Element e;
      e.id = j * nx + i;
      e.box = Rect{i * hx, (i + 1) * hx, j * hy, (j + 1) * hy};
      e.barycenter = e.box.center();
      elements_.push_back(e);
    }

  // vertical interior faces, then horizontal, in row-major element order
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      InteriorFace f;
      f.left_id = j * nx + i;
      f.right_id = j * nx + i + 1;
      f.a = {(i + 1) * hx, j * hy};
      f.b = {(i + 1) * hx, (j + 1) * hy};
      f.normal = {1.0, 0.0};
      interior_faces_.push_back(f);
    }
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      InteriorFace f;
      f.left_id = j * nx + i;
      f.right_id = (j + 1) * nx + i;
      f.a = {i * hx, (j + 1) * hy};
      f.b = {(i + 1) * hx, (j + 1) * hy};
      f.normal = {0.0, 1.0};
      interior_faces_.push_back(f);
    }

  for (int i = 0; i < nx; ++i) {
    boundary_faces_.push_back({i, {i * hx, 0.0}, {(i + 1) * hx, 0.0}, {0.0, -1.0}});
    boundary_faces_.push_back(
        {(ny - 1) * nx + i, {i * hx, 1.0}, {(i + 1) * hx, 1.0}, {0.0, 1.0}});
  }
  for (int j = 0; j < ny; ++j) {
    boundary_faces_.push_back({j * nx, {0.0, j * hy}, {0.0, (j + 1) * hy}, {-1.0, 0.0}});
    boundary_faces_.push_back(
        {j * nx + nx - 1, {1.0, j * hy}, {1.0, (j + 1) * hy}, {1.0, 0.0}});
  }
}

Disc MeshPartition::fictitious_disc(int element_id) const {
  const Element& e = elements_.at(element_id);
  const double radius = 0.5 * std::hypot(e.box.width(), e.box.height());
  return Disc{e.barycenter, radius};
}

}  // namespace gopw
