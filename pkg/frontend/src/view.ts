// Render a Report into HTML strings.  Every number shown here is read
// from a report field; nothing is recomputed client-side.

import { CertificateRow, Report } from './api.js'
import { parseDot, renderGraphSvg } from './dot.js'

const REL_TIE = 1e-9

export function fmt(x: number, digits = 6): string {
  return Number(x.toPrecision(digits)).toString()
}

export function verdictBadges(r: Report): string {
  const eff =
    r.verdict === 'efficient'
      ? '<span class="badge badge-efficient">Efficient</span>'
      : '<span class="badge badge-inefficient">Inefficient</span>'
  const weak =
    r.weak_verdict === 'weakly_efficient'
      ? '<span class="badge badge-weak">Weakly efficient</span>'
      : '<span class="badge badge-strong-inefficient">Strongly inefficient</span>'
  const lp =
    r.lp_optimum === null
      ? ''
      : `<span class="lp-optimum">program optimum ${fmt(r.lp_optimum)}</span>`
  return `${eff} ${weak} ${lp}`
}

// Ranking like "C2 &#x227B; C1 &#x223C; C3": descending weights, with ties
// joined by the similarity sign.
export function rankingLine(weights: number[], labels: string[]): string {
  const order = weights
    .map((w, k) => ({ w, k }))
    .sort((a, b) => b.w - a.w)
  const parts: string[] = [labels[order[0].k]]
  for (let idx = 1; idx < order.length; idx++) {
    const prev = order[idx - 1].w
    const cur = order[idx].w
    const tie = Math.abs(prev - cur) <= REL_TIE * Math.max(prev, cur)
    parts.push(tie ? '&#x223C;' : '&#x227B;', labels[order[idx].k])
  }
  return parts.join(' ')
}

function labelsOf(r: Report): string[] {
  return Array.from({ length: r.n }, (_, k) => `C${k + 1}`)
}

export function rankingComparison(r: Report): string {
  const labels = labelsOf(r)
  const incumbent = rankingLine(r.weights, labels)
  if (!r.dominator) {
    return `<div class="ranking"><span class="ranking-label">ranking</span> ${incumbent}</div>`
  }
  const improved = rankingLine(r.dominator, labels)
  const flip = improved !== incumbent
  return [
    `<div class="ranking"><span class="ranking-label">current</span> ${incumbent}</div>`,
    `<div class="ranking"><span class="ranking-label">dominating</span> ${improved}`,
    flip ? ' <span class="ranking-flip">ranking changes</span>' : '',
    '</div>',
  ].join('')
}

export function dominatorPanel(r: Report): string {
  if (!r.dominator) return ''
  const labels = labelsOf(r)
  const rows = r.dominator
    .map(
      (d, k) =>
        `<tr><td>${labels[k]}</td><td>${fmt(r.weights[k])}</td>` +
        `<td class="dominator-value">${fmt(d)}</td></tr>`,
    )
    .join('')
  return [
    '<table class="dominator-table"><thead>',
    '<tr><th></th><th>current</th><th>dominating</th></tr>',
    `</thead><tbody>${rows}</tbody></table>`,
  ].join('')
}

// Residual-improvement cells come straight from the certificate rows.
export function residualTable(r: Report): string {
  if (!r.dominance_certificate.length) return ''
  const rows = r.dominance_certificate
    .map(
      (c: CertificateRow) =>
        `<tr class="improved" data-pair="${c.i}-${c.j}">` +
        `<td>(${c.i}, ${c.j})</td><td>${fmt(c.old)}</td><td>${fmt(c.new)}</td></tr>`,
    )
    .join('')
  return [
    '<table class="residual-table"><thead>',
    '<tr><th>position</th><th>residual</th><th>after</th></tr>',
    `</thead><tbody>${rows}</tbody></table>`,
  ].join('')
}

export function weightsLine(r: Report): string {
  const lambda =
    r.lambda_max === null ? '' : ` <span class="lambda">&lambda;&#x2098;&#x2090;&#x2093; = ${fmt(r.lambda_max)}</span>`
  return `<div class="weights">w = [${r.weights.map((w) => fmt(w)).join(', ')}]${lambda}</div>`
}

export function renderReport(r: Report): string {
  return [
    `<div class="verdicts">${verdictBadges(r)}</div>`,
    weightsLine(r),
    rankingComparison(r),
    dominatorPanel(r),
    residualTable(r),
  ].join('\n')
}

export function renderDigraph(r: Report): string {
  return renderGraphSvg(parseDot(r.dot))
}
