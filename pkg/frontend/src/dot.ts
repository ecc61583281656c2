// Parse the service's DOT digraph text and lay it out on a circle.
// Bidirected pairs (ties) render as one double-headed edge, visually
// distinct from one-way arcs.

export type ParsedGraph = {
  n: number
  labels: string[]
  arcs: [number, number][] // 1-based, as in the DOT text
}

const NODE_LINE = /^\s*(\d+)\s*\[label="([^"]*)"\];?\s*$/
const ARC_LINE = /^\s*(\d+)\s*->\s*(\d+);?\s*$/

export function parseDot(dot: string): ParsedGraph {
  const labels: string[] = []
  const arcs: [number, number][] = []
  for (const line of dot.split('\n')) {
    const node = line.match(NODE_LINE)
    if (node) {
      labels[Number(node[1]) - 1] = node[2]
      continue
    }
    const arc = line.match(ARC_LINE)
    if (arc) arcs.push([Number(arc[1]), Number(arc[2])])
  }
  return { n: labels.length, labels, arcs }
}

export function hasArc(g: ParsedGraph, from: number, to: number): boolean {
  return g.arcs.some(([a, b]) => a === from && b === to)
}

// Unordered tie pairs: both directions present.
export function bidirectedPairs(g: ParsedGraph): [number, number][] {
  const set = new Set(g.arcs.map(([a, b]) => `${a}>${b}`))
  const out: [number, number][] = []
  for (const [a, b] of g.arcs) {
    if (a < b && set.has(`${b}>${a}`)) out.push([a, b])
  }
  return out
}

type Point = { x: number; y: number }

function circleLayout(n: number, size: number): Point[] {
  const r = size / 2 - 28
  const cx = size / 2
  const cy = size / 2
  return Array.from({ length: n }, (_, k) => {
    const angle = (2 * Math.PI * k) / n - Math.PI / 2
    return { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) }
  })
}

function shorten(a: Point, b: Point, by: number): [Point, Point] {
  const dx = b.x - a.x
  const dy = b.y - a.y
  const len = Math.hypot(dx, dy)
  const ux = dx / len
  const uy = dy / len
  return [
    { x: a.x + ux * by, y: a.y + uy * by },
    { x: b.x - ux * by, y: b.y - uy * by },
  ]
}

export function renderGraphSvg(g: ParsedGraph, size = 280): string {
  const pts = circleLayout(g.n, size)
  const ties = new Set(bidirectedPairs(g).map(([a, b]) => `${a}>${b}`))
  const parts: string[] = []
  parts.push(
    `<svg viewBox="0 0 ${size} ${size}" xmlns="http://www.w3.org/2000/svg" role="img">`,
    '<defs>',
    '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">',
    '<path d="M 0 0 L 10 5 L 0 10 z"/></marker>',
    '</defs>',
  )
  const drawn = new Set<string>()
  for (const [a, b] of g.arcs) {
    const lo = Math.min(a, b)
    const hi = Math.max(a, b)
    const isTie = ties.has(`${lo}>${hi}`)
    const key = isTie ? `${lo}>${hi}` : `${a}>${b}`
    if (drawn.has(key)) continue
    drawn.add(key)
    const [p, q] = shorten(pts[a - 1], pts[b - 1], 18)
    if (isTie) {
      parts.push(
        `<line class="arc arc-bidirected" data-arc="${lo}-${hi}" x1="${p.x.toFixed(1)}" y1="${p.y.toFixed(1)}" x2="${q.x.toFixed(1)}" y2="${q.y.toFixed(1)}" marker-start="url(#arrow)" marker-end="url(#arrow)"/>`,
      )
    } else {
      parts.push(
        `<line class="arc" data-arc="${a}-${b}" x1="${p.x.toFixed(1)}" y1="${p.y.toFixed(1)}" x2="${q.x.toFixed(1)}" y2="${q.y.toFixed(1)}" marker-end="url(#arrow)"/>`,
      )
    }
  }
  g.labels.forEach((label, k) => {
    const p = pts[k]
    parts.push(
      `<circle class="node" cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="14"/>`,
      `<text class="node-label" x="${p.x.toFixed(1)}" y="${(p.y + 4).toFixed(1)}" text-anchor="middle">${label}</text>`,
    )
  })
  parts.push('</svg>')
  return parts.join('')
}
