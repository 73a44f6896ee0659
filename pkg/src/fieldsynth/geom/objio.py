"""Wavefront OBJ export for debugging plant geometry."""

from __future__ import annotations


def write_obj(path, meshes, object_names=None):
    """Write meshes to OBJ, one `o` object per mesh (per organ)."""
    meshes = list(meshes)
    names = object_names or [f"{m.organ_label}_{i}" for i, m in enumerate(meshes)]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# fieldsynth mesh export\n")
        v_off = vt_off = vn_off = 1
        for mesh, name in zip(meshes, names):
            fh.write(f"o {name}\n")
            for v in mesh.vertices:
                fh.write(f"v {v[0]:.6f} {v[1]:.6f} {v[2]:.6f}\n")
            has_uv = mesh.uvs is not None
            has_n = mesh.normals is not None
            if has_uv:
                for t in mesh.uvs:
                    fh.write(f"vt {t[0]:.6f} {t[1]:.6f}\n")
            if has_n:
                for n in mesh.normals:
                    fh.write(f"vn {n[0]:.6f} {n[1]:.6f} {n[2]:.6f}\n")
            for tri in mesh.triangles:
                parts = []
                for idx in tri:
                    vi = idx + v_off
                    if has_uv and has_n:
                        parts.append(f"{vi}/{idx + vt_off}/{idx + vn_off}")
                    elif has_uv:
                        parts.append(f"{vi}/{idx + vt_off}")
                    elif has_n:
                        parts.append(f"{vi}//{idx + vn_off}")
                    else:
                        parts.append(str(vi))
                fh.write("f " + " ".join(parts) + "\n")
            v_off += mesh.vertex_count
            if has_uv:
                vt_off += mesh.vertex_count
            if has_n:
                vn_off += mesh.vertex_count
