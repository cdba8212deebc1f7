#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdroute/theta_graph.hpp"

namespace tdroute {

// Bounded faces of a plane graph, each stored as its vertex cycle in
// counterclockwise order. Also indexes faces by incident vertex.
struct FaceList {
  std::vector<int32_t> face_start;  // CSR over face_verts
  std::vector<int32_t> face_verts;
  std::vector<int32_t> vert_face_start;  // CSR over vert_faces
  std::vector<int32_t> vert_faces;

  // Parity of the half graph the faces came from: 0 even, 1 odd,
  // -1 for anything else.
  int parity = -1;

  int face_count() const { return static_cast<int>(face_start.size()) - 1; }

  std::span<const int32_t> face(int f) const {
    return {face_verts.data() + face_start[f], face_verts.data() + face_start[f + 1]};
  }

  std::span<const int32_t> faces_at(int v) const {
    return {vert_faces.data() + vert_face_start[v], vert_faces.data() + vert_face_start[v + 1]};
  }
};

// Walks the rotation system of g and keeps the cycles with positive
// signed area. Requires a plane embedding, which the half kinds provide;
// results are meaningless for a graph with crossing edges.
FaceList extract_faces(const ThetaGraph& g);

}  // namespace tdroute
