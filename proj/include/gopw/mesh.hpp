#ifndef GOPW_MESH_HPP
#define GOPW_MESH_HPP

#include <vector>

#include "gopw/geometry.hpp"

namespace gopw {

struct Element {
  int id = 0;
  Rect box;
  Point barycenter;
};

// Interior face; the unit normal points from left_id into right_id.
struct InteriorFace {
  int left_id = 0;
  int right_id = 0;
  Point a, b;  // segment endpoints
  Point normal;
};

struct BoundaryFace {
  int element_id = 0;
  Point a, b;
  Point outward_normal;
};

// Uniform rectangular partition of [0,1]^2 with its face skeleton and the
// fictitious disc attached to every element.
class MeshPartition {
 public:
  MeshPartition(int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<InteriorFace>& interior_faces() const { return interior_faces_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return boundary_faces_; }

  // Smallest disc containing the element: centered at the barycenter with
  // radius half the element diagonal.  Discs may overlap neighbours and poke
  // past the domain boundary; sources must be evaluable there.
  Disc fictitious_disc(int element_id) const;

 private:
  int nx_, ny_;
  double h_;
  std::vector<Element> elements_;
  std::vector<InteriorFace> interior_faces_;
  std::vector<BoundaryFace> boundary_faces_;
};

inline MeshPartition build_mesh(int nx, int ny) { return MeshPartition(nx, ny); }

}  // namespace gopw

#endif
