import { describe, expect, it } from 'vitest'

import { AttemptHistory } from '../src/history'

describe('AttemptHistory', () => {
  it('is append-only and per-exercise', () => {
    const history = new AttemptHistory()
    history.record('a', { submitted: 'x', verdict: 'neither', simplicity: null, timestamp: 1 })
    history.record('a', { submitted: 'y', verdict: 'equivalent', simplicity: 9.5, timestamp: 2 })
    history.record('b', { submitted: 'z', verdict: null, simplicity: null, timestamp: 3 })
    expect(history.for('a').map(e => e.submitted)).toEqual(['x', 'y'])
    expect(history.for('b').length).toBe(1)
    expect(history.for('missing')).toEqual([])
  })

  it('preserves submission order', () => {
    const history = new AttemptHistory()
    for (let i = 0; i < 5; i++) {
      history.record('a', { submitted: `attempt ${i}`, verdict: null,
                            simplicity: null, timestamp: i })
    }
    expect(history.for('a').map(e => e.timestamp)).toEqual([0, 1, 2, 3, 4])
  })
})
