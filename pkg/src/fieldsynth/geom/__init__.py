"""Mesh construction: Bezier paths, generalized cylinders, material maps."""

from .bezier import bezier_eval, bezier_tangent
from .maps import (decode_normal_map, height_and_roughness_from_diffuse,
                   luminance, normal_from_height)
from .mesh import (MaterialSlot, Mesh, merge_meshes, smooth_vertex_normals,
                   yaw_matrix)
from .objio import write_obj
from .sweep import (CrossSection, make_leaf_mesh, parallel_transport_frames,
                    sweep_generalized_cylinder)

__all__ = [
    "bezier_eval", "bezier_tangent",
    "decode_normal_map", "height_and_roughness_from_diffuse", "luminance",
    "normal_from_height",
    "MaterialSlot", "Mesh", "merge_meshes", "smooth_vertex_normals",
    "yaw_matrix", "write_obj",
    "CrossSection", "make_leaf_mesh", "parallel_transport_frames",
    "sweep_generalized_cylinder",
]
