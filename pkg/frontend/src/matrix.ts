// Upper-triangle matrix editor state.  The user edits only cells above the
// diagonal; the lower triangle always displays the exact reciprocal and is
// never independently editable.

export type CellError = { i: number; j: number; message: string }

const FRACTION = /^(\d+)\s*\/\s*(\d+)$/

export function parseCellValue(text: string): number | null {
  const t = text.trim()
  if (!t) return null
  const frac = t.match(FRACTION)
  if (frac) {
    const num = Number(frac[1])
    const den = Number(frac[2])
    if (den === 0 || num === 0) return null
    return num / den
  }
  const v = Number(t)
  return Number.isFinite(v) && v > 0 ? v : null
}

// Reciprocal as text: fractions flip exactly, numbers divide.
export function reciprocalText(text: string): string {
  const t = text.trim()
  const frac = t.match(FRACTION)
  if (frac) return `${frac[2]}/${frac[1]}`
  const v = parseCellValue(t)
  if (v === null) return ''
  if (Number.isInteger(v)) return `1/${v}`
  const r = 1 / v
  return Number.isInteger(r) ? String(r) : r.toPrecision(6)
}

// Wire value for the mirrored cell: fraction strings flip losslessly, so
// the backend sees an exactly reciprocal pair either way.
function reciprocalWire(text: string): number | string {
  const t = text.trim()
  const frac = t.match(FRACTION)
  if (frac) return `${frac[2]}/${frac[1]}`
  if (/^\d+$/.test(t)) return `1/${t}`
  return 1 / (parseCellValue(t) as number)
}

export class MatrixEditorState {
  n: number
  private cells: string[][]
  private dirtyFlags: boolean[][]

  constructor(n: number) {
    if (n < 3) throw new Error('need at least 3 items')
    this.n = n
    this.cells = Array.from({ length: n }, () => Array(n).fill('1'))
    this.dirtyFlags = Array.from({ length: n }, () => Array(n).fill(false))
  }

  cellText(i: number, j: number): string {
    if (i === j) return '1'
    if (i < j) return this.cells[i][j]
    return reciprocalText(this.cells[j][i])
  }

  isEditable(i: number, j: number): boolean {
    return i < j
  }

  isDirty(i: number, j: number): boolean {
    return i < j ? this.dirtyFlags[i][j] : false
  }

  setCell(i: number, j: number, text: string): void {
    if (!this.isEditable(i, j)) {
      throw new Error('only upper-triangle cells are editable')
    }
    this.cells[i][j] = text
    this.dirtyFlags[i][j] = true
  }

  loadPreset(upper: (number | string)[][]): void {
    for (let i = 0; i < this.n; i++) {
      for (let j = i + 1; j < this.n; j++) {
        this.cells[i][j] = String(upper[i][j])
        this.dirtyFlags[i][j] = false
      }
    }
  }

  errors(): CellError[] {
    const out: CellError[] = []
    for (let i = 0; i < this.n; i++) {
      for (let j = i + 1; j < this.n; j++) {
        if (parseCellValue(this.cells[i][j]) === null) {
          out.push({ i, j, message: 'enter a positive number or a fraction p/q' })
        }
      }
    }
    return out
  }

  isValid(): boolean {
    return this.errors().length === 0
  }

  // Full matrix for the wire: strings pass through so exact fractions stay
  // exact; the lower triangle mirrors reciprocals.
  payloadEntries(): (number | string)[][] {
    if (!this.isValid()) throw new Error('matrix has invalid cells')
    const rows: (number | string)[][] = []
    for (let i = 0; i < this.n; i++) {
      const row: (number | string)[] = []
      for (let j = 0; j < this.n; j++) {
        if (i === j) row.push(1)
        else if (i < j) row.push(this.cells[i][j].trim())
        else row.push(reciprocalWire(this.cells[j][i]))
      }
      rows.push(row)
    }
    return rows
  }
}
