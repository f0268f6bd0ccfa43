import * as THREE from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";

import {
  DUAL_FACE_COLOR,
  PRIMAL_EDGE_COLOR,
  PRIMAL_FACE_COLOR,
  memberStyle,
} from "./colors";
import { ComplexDoc, SolveResponse } from "./types";

/** Fan triangulation of a convex polygon given as an index loop. */
export function triangulateFan(loop: number[]): [number, number, number][] {
  const tris: [number, number, number][] = [];
  for (let i = 1; i + 1 < loop.length; i++) {
    tris.push([loop[0], loop[i], loop[i + 1]]);
  }
  return tris;
}

function flat(vertices: number[][], indices: number[]): Float32Array {
  const out = new Float32Array(indices.length * 3);
  indices.forEach((vi, k) => out.set(vertices[vi], k * 3));
  return out;
}

/** Translucent faces plus edge lines for the primal complex. */
export function buildPrimalGroup(doc: ComplexDoc): THREE.Group {
  const group = new THREE.Group();
  group.name = "primal";

  const activeFaces = new Set(doc.active.face_ids);
  const triIdx: number[] = [];
  doc.faces.forEach((loop, fi) => {
    if (!activeFaces.has(fi)) return; // stress-cell faces stay invisible
    for (const tri of triangulateFan(loop)) triIdx.push(...tri);
  });
  const faceGeo = new THREE.BufferGeometry();
  faceGeo.setAttribute("position", new THREE.BufferAttribute(flat(doc.vertices, triIdx), 3));
  faceGeo.computeVertexNormals();
  const faceMat = new THREE.MeshBasicMaterial({
    color: PRIMAL_FACE_COLOR,
    transparent: true,
    opacity: 0.18,
    side: THREE.DoubleSide,
    depthWrite: false,
  });
  const faces = new THREE.Mesh(faceGeo, faceMat);
  faces.name = "primal-faces";
  group.add(faces);

  const segIdx: number[] = [];
  for (const [t, h] of doc.edges) segIdx.push(t, h);
  const edgeGeo = new THREE.BufferGeometry();
  edgeGeo.setAttribute("position", new THREE.BufferAttribute(flat(doc.vertices, segIdx), 3));
  const edges = new THREE.LineSegments(
    edgeGeo,
    new THREE.LineBasicMaterial({ color: PRIMAL_EDGE_COLOR }),
  );
  edges.name = "primal-edges";
  group.add(edges);
  return group;
}

/**
 * Dual members as line segments colored by force label; zero-force members
 * dashed.  Face polygons are added translucently for context.
 */
export function buildDualGroup(solve: SolveResponse): THREE.Group {
  const group = new THREE.Group();
  group.name = "dual";
  const verts = solve.dual.vertices;

  solve.dual.edges.forEach(([tail, head], k) => {
    const style = memberStyle(solve.member_forces[k]);
    const geo = new THREE.BufferGeometry();
    geo.setAttribute(
      "position",
      new THREE.BufferAttribute(flat(verts, [tail, head]), 3),
    );
    const mat = style.dashed
      ? new THREE.LineDashedMaterial({ color: style.color, dashSize: 0.08, gapSize: 0.05 })
      : new THREE.LineBasicMaterial({ color: style.color });
    const line = new THREE.LineSegments(geo, mat);
    if (style.dashed) line.computeLineDistances();
    line.name = `member-${k}-${solve.member_forces[k]}`;
    group.add(line);
  });

  const triIdx: number[] = [];
  for (const face of solve.dual.faces) {
    for (const tri of triangulateFan(face.vertex_cycle)) triIdx.push(...tri);
  }
  if (triIdx.length) {
    const faceGeo = new THREE.BufferGeometry();
    faceGeo.setAttribute("position", new THREE.BufferAttribute(flat(verts, triIdx), 3));
    const mesh = new THREE.Mesh(
      faceGeo,
      new THREE.MeshBasicMaterial({
        color: DUAL_FACE_COLOR,
        transparent: true,
        opacity: 0.12,
        side: THREE.DoubleSide,
        depthWrite: false,
      }),
    );
    mesh.name = "dual-faces";
    group.add(mesh);
  }
  return group;
}

/** A canvas pane with orbit controls showing a single replaceable group. */
export class ViewPane {
  private readonly scene = new THREE.Scene();
  private readonly camera: THREE.PerspectiveCamera;
  private readonly renderer: THREE.WebGLRenderer;
  private readonly controls: OrbitControls;
  private content: THREE.Group | null = null;

  constructor(private readonly host: HTMLElement) {
    this.renderer = new THREE.WebGLRenderer({ antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
    host.appendChild(this.renderer.domElement);
    this.camera = new THREE.PerspectiveCamera(45, 1, 0.01, 1000);
    this.camera.position.set(2.2, 1.6, 2.2);
    this.controls = new OrbitControls(this.camera, this.renderer.domElement);
    this.controls.enableDamping = true;
    this.scene.background = new THREE.Color("#0f172a");
    new ResizeObserver(() => this.resize()).observe(host);
    this.resize();
    this.renderer.setAnimationLoop(() => {
      this.controls.update();
      this.renderer.render(this.scene, this.camera);
    });
  }

  private resize(): void {
    const w = this.host.clientWidth || 1;
    const h = this.host.clientHeight || 1;
    this.renderer.setSize(w, h, false);
    this.camera.aspect = w / h;
    this.camera.updateProjectionMatrix();
  }

  /** Swap the displayed group, recentring the orbit target on its bounds. */
  show(group: THREE.Group, refit = false): void {
    if (this.content) this.scene.remove(this.content);
    this.content = group;
    this.scene.add(group);
    if (refit) this.fit(group);
  }

  private fit(group: THREE.Group): void {
    const box = new THREE.Box3().setFromObject(group);
    if (box.isEmpty()) return;
    const center = box.getCenter(new THREE.Vector3());
    const size = box.getSize(new THREE.Vector3()).length() || 1;
    this.controls.target.copy(center);
    this.camera.position.copy(center).add(new THREE.Vector3(size, size * 0.7, size));
    this.camera.near = size / 100;
    this.camera.far = size * 100;
    this.camera.updateProjectionMatrix();
  }
}
