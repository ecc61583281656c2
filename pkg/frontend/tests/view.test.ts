import { readFileSync } from 'node:fs'
import { describe, expect, it } from 'vitest'

import { Report } from '../src/api.js'
import {
  dominatorPanel,
  fmt,
  rankingComparison,
  rankingLine,
  renderReport,
  residualTable,
  verdictBadges,
} from '../src/view.js'

function fixture(name: string): Report {
  return JSON.parse(
    readFileSync(`${process.cwd()}/tests/fixtures/${name}`, 'utf-8'),
  ) as Report
}

describe('verdict badges', () => {
  it('renders the inefficient badge for the demo preset', () => {
    const html = verdictBadges(fixture('demo-eigenvector.json'))
    expect(html).toContain('Inefficient')
    expect(html).toContain('Weakly efficient')
    expect(html).toContain('program optimum')
  })

  it('renders the efficient badge for the uniform preset', () => {
    const html = verdictBadges(fixture('ones-uniform.json'))
    expect(html).toContain('>Efficient<')
    expect(html).not.toContain('Inefficient')
  })

  it('renders strong inefficiency for the powers preset', () => {
    expect(verdictBadges(fixture('powers2-vs-powers3.json'))).toContain(
      'Strongly inefficient',
    )
  })
})

describe('rankings', () => {
  it('orders by weight with strict separators', () => {
    expect(rankingLine([0.404518, 0.436173, 0.110295, 0.049014],
                       ['C1', 'C2', 'C3', 'C4']))
      .toBe('C2 &#x227B; C1 &#x227B; C3 &#x227B; C4')
  })

  it('ties use the similarity sign', () => {
    expect(rankingLine([0.3, 0.3, 0.4], ['C1', 'C2', 'C3']))
      .toBe('C3 &#x227B; C1 &#x223C; C2')
  })

  it('demo preset shows the ranking flip', () => {
    const html = rankingComparison(fixture('demo-eigenvector.json'))
    // incumbent C2 before C1; the dominating vector ties them
    expect(html).toContain('C2 &#x227B; C1')
    expect(html).toContain('C1 &#x223C; C2')
    expect(html).toContain('ranking changes')
  })

  it('no flip marker without a dominator', () => {
    const html = rankingComparison(fixture('ones-uniform.json'))
    expect(html).not.toContain('ranking changes')
  })
})

describe('dominator panel and residuals', () => {
  it('shows exactly the recorded dominator values', () => {
    const rep = fixture('demo-eigenvector.json')
    const html = dominatorPanel(rep)
    for (const value of rep.dominator as number[]) {
      expect(html).toContain(`>${fmt(value)}<`)
    }
  })

  it('marks exactly the certificate rows as improved', () => {
    const rep = fixture('demo-eigenvector.json')
    const html = residualTable(rep)
    const marked = (html.match(/class="improved"/g) ?? []).length
    expect(marked).toBe(rep.dominance_certificate.length)
    for (const row of rep.dominance_certificate) {
      expect(html).toContain(`data-pair="${row.i}-${row.j}"`)
      expect(html).toContain(fmt(row.old))
      expect(html).toContain(fmt(row.new))
    }
  })

  it('omits both panels for efficient vectors', () => {
    const rep = fixture('ones-uniform.json')
    expect(dominatorPanel(rep)).toBe('')
    expect(residualTable(rep)).toBe('')
  })
})

describe('full report rendering', () => {
  it('contains badges, weights, rankings, and tables', () => {
    const html = renderReport(fixture('demo-eigenvector.json'))
    expect(html).toContain('badge-inefficient')
    expect(html).toContain('w = [')
    expect(html).toContain('dominator-table')
    expect(html).toContain('residual-table')
  })
})
