/** Draw a scene graph onto a 2D canvas.  Thin and dumb by design: all
 * layout decisions already happened in the renderers. */

import type { Scene } from "./scene.js";

export function drawScene(ctx: CanvasRenderingContext2D, s: Scene): void {
  ctx.canvas.width = s.width;
  ctx.canvas.height = s.height;
  ctx.fillStyle = s.background;
  ctx.fillRect(0, 0, s.width, s.height);

  for (const node of s.nodes) {
    ctx.globalAlpha = node.type === "text" ? 1 : node.alpha ?? 1;
    switch (node.type) {
      case "rect":
        if (node.fill) {
          ctx.fillStyle = node.fill;
          ctx.fillRect(node.x, node.y, node.w, node.h);
        }
        if (node.stroke) {
          ctx.strokeStyle = node.stroke;
          ctx.lineWidth = node.width ?? 1;
          ctx.strokeRect(node.x, node.y, node.w, node.h);
        }
        break;
      case "line":
        ctx.strokeStyle = node.stroke;
        ctx.lineWidth = node.width;
        ctx.beginPath();
        ctx.moveTo(node.x1, node.y1);
        ctx.lineTo(node.x2, node.y2);
        ctx.stroke();
        break;
      case "circle":
        ctx.beginPath();
        ctx.arc(node.cx, node.cy, node.r, 0, 2 * Math.PI);
        if (node.fill) {
          ctx.fillStyle = node.fill;
          ctx.fill();
        }
        if (node.stroke) {
          ctx.strokeStyle = node.stroke;
          ctx.lineWidth = node.width ?? 1;
          ctx.stroke();
        }
        break;
      case "arc":
        ctx.beginPath();
        ctx.moveTo(node.cx, node.cy);
        ctx.arc(node.cx, node.cy, node.r, node.start, node.end);
        ctx.closePath();
        ctx.fillStyle = node.fill;
        ctx.fill();
        break;
      case "polyline": {
        ctx.beginPath();
        node.points.forEach(([x, y], i) =>
          i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y),
        );
        if (node.fill) {
          ctx.closePath();
          ctx.fillStyle = node.fill;
          ctx.fill();
        }
        if (node.stroke) {
          ctx.strokeStyle = node.stroke;
          ctx.lineWidth = node.width ?? 1;
          ctx.stroke();
        }
        break;
      }
      case "text":
        ctx.fillStyle = node.fill;
        ctx.font = `${node.size}px system-ui, sans-serif`;
        ctx.textAlign = node.align ?? "left";
        ctx.fillText(node.text, node.x, node.y);
        break;
    }
  }
  ctx.globalAlpha = 1;
}
